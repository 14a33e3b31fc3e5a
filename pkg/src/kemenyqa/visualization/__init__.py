"""Rich renderings of solver output."""
