# Counterexample commands
