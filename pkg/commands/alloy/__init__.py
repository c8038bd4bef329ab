# Alloy commands
