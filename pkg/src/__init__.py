"""DC grid welfare controller - Main Package."""
