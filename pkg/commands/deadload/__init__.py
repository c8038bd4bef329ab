# Dead-load commands
