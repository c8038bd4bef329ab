# Relaxation commands
