"""Lemniscatic elliptic functions hidden in the system s\x27 = c^3, c\x27 = -s^3."""
