"""
Main entry point for the crossfit-synth command line
"""
from cli.main import cli

if __name__ == "__main__":
    cli()
