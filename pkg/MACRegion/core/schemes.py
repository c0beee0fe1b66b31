'''
Rate-region schemes computed by :py:mod:`~MACRegion.core.region`.

:const:`~MACRegion.core.schemes.GAUSSIAN_CAPACITY` :
    capacity region of the real two-user Gaussian MAC, no gap

:const:`~MACRegion.core.schemes.GAP_OUTER`:
    per-user and sum-rate bounds with the rate-dependent PAM gap

:const:`~MACRegion.core.schemes.SUPERPOS_NO_PC`:
    superposition of integer-bit PAM, every user at constant power

:const:`~MACRegion.core.schemes.SUPERPOS_PC`:
    superposition with power control, the pentagon through b1 and c1

:const:`~MACRegion.core.schemes.TDMA_NAIVE`:
    time sharing of the two single-user integer rates

:const:`~MACRegion.core.schemes.TDMA_PC`:
    time sharing where each user boosts its power inside its own slot
'''

GAUSSIAN_CAPACITY = 'gaussian_capacity'
GAP_OUTER = 'gap_outer'
SUPERPOS_NO_PC = 'superpos_no_pc'
SUPERPOS_PC = 'superpos_pc'
TDMA_NAIVE = 'tdma_naive'
TDMA_PC = 'tdma_pc'

ALL_SCHEMES = (GAUSSIAN_CAPACITY, GAP_OUTER, SUPERPOS_NO_PC, SUPERPOS_PC, TDMA_NAIVE, TDMA_PC)


def parse_schemes(text):
    """
    Parse a comma separated list of scheme names; ``None``, ``''`` or
    ``'all'`` select every scheme.
    """
    if text is None or text.strip() in ('', 'all'):
        return ALL_SCHEMES
    names = [s.strip() for s in text.split(',') if s.strip()]
    unknown = [s for s in names if s not in ALL_SCHEMES]
    if unknown:
        raise ValueError("unknown scheme(s) %s, choose from %s" % (', '.join(unknown), ', '.join(ALL_SCHEMES)))
    return tuple(names)
