"""ifcaudit: IFC/SPF interoperability audit toolkit.

Parses STEP physical files, generates the synthetic geometry conformance
suite, detects georeferencing levels, checks geometric validity, evaluates
shapes to triangle meshes and reports round-trip entity-census differences.
"""

__version__ = "0.1.0"
