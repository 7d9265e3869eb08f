# ============================================================================
# LatticeChoose - Shared Package
# ============================================================================
"""
Color sets, errors, JSON documents, document storage, the run audit log and
the optional Kafka event client used by every other package.
"""

__version__ = "1.0.0"
