"""Grid module - network topology and physical DC-grid plant."""
