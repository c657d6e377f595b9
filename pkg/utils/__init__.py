# Image, bitplane, qubit-simulation and metrics modules used by the CLI handlers
