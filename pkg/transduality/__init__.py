"""
Exact computer algebra for T-duality of transgressive fibrations.
For more details about this package, please refer to README.md.
"""
