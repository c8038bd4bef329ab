# Report commands
