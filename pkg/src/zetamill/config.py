"""Cost caps and desk-scale limits.

All enumeration-heavy operations estimate their cost up front and refuse
(raising CapExceeded) instead of running unbounded.  The caps below are the
package-wide defaults; every operation also accepts an explicit ``cap``
argument for one-off overrides (the CLI exposes ``--force`` / ``--cap``).
"""

from dataclasses import dataclass


@dataclass
class Limits:
    # maximum number of evaluated tuples in a single enumeration kernel
    enumeration_cap: int = 10**9
    # fields with more elements than this are never fully enumerated
    field_size_cap: int = 2**40
    # |exponent| bound for Laurent monomials, enforced at parse time
    exponent_bound: int = 2**20
    # build full QxQ add/mul lookup tables when the field has <= this many elements
    scalar_table_cap: int = 4096
    # build generator exp/log tables when the field has <= this many elements
    log_table_cap: int = 2**21
    # bounding-box cap for lattice-point scans (points per dilate count)
    lattice_scan_cap: int = 10**8


DEFAULT = Limits()


def effective_cap(cap=None):
    """Resolve an explicit cap argument against the package default."""
    return DEFAULT.enumeration_cap if cap is None else cap
