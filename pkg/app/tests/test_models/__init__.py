# Test models package 