# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Numerov sweep for the radial equation chi'' = f(r) chi.

Mirrors ``_numerov_py`` exactly (same arithmetic, same rescaling thresholds)
so that both kernels produce bit-identical node counts.
"""

from libc.math cimport fabs

# Rescaling bounds keep the exponentially growing solution representable in
# the classically forbidden region without touching its sign structure.
cdef double RESCALE_LIMIT = 1e250
cdef double RESCALE_FACTOR = 1e-250


def count_nodes_sweep(const double[::1] w, double energy, double h,
                      double u0, double u1):
    """Outward Numerov sweep; returns (sign changes, last value).

    ``w`` holds the energy-independent part of f = 2(V_eff - E), i.e.
    w = l(l+1)/r^2 + 2 V(r), sampled on a uniform grid of spacing ``h``.
    """
    cdef Py_ssize_t n = w.shape[0]
    cdef Py_ssize_t i
    cdef double h2_12 = h * h / 12.0
    cdef double tm, tc, tp
    cdef double um = u0
    cdef double uc = u1
    cdef double un
    cdef int nodes = 0
    cdef double sprev = 0.0

    if n < 3:
        return 0, uc

    if u0 != 0.0:
        sprev = 1.0 if u0 > 0.0 else -1.0
    if uc != 0.0:
        if sprev != 0.0 and ((uc > 0.0) != (sprev > 0.0)):
            nodes += 1
        sprev = 1.0 if uc > 0.0 else -1.0

    tm = h2_12 * (w[0] - 2.0 * energy)
    tc = h2_12 * (w[1] - 2.0 * energy)
    with nogil:
        for i in range(1, n - 1):
            tp = h2_12 * (w[i + 1] - 2.0 * energy)
            un = ((2.0 + 10.0 * tc) * uc - (1.0 - tm) * um) / (1.0 - tp)
            um = uc
            uc = un
            tm = tc
            tc = tp
            if fabs(uc) > RESCALE_LIMIT:
                uc *= RESCALE_FACTOR
                um *= RESCALE_FACTOR
            if uc != 0.0:
                if sprev != 0.0 and ((uc > 0.0) != (sprev > 0.0)):
                    nodes += 1
                sprev = 1.0 if uc > 0.0 else -1.0
    return nodes, uc
