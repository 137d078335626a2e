"""Instance file storage."""
