# Layer commands
