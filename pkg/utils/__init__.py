# Output rendering helpers
