"""Typicality-controlled design exploration engine.

Blocks capture exploratory intent (property, direction keyword, typicality
level) and produce four diverse suggestions through a diversify / expand /
rank / cluster pipeline. Blocks chain so prior results condition the next
images; blocks and paths are reusable; linkography metrics summarize the
exploration process.
"""

__version__ = "0.1.0"
