# Test package for Email Lead Agent
