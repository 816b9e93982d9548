"""Published exact volumes and probabilities used as test targets."""

from fractions import Fraction as F

VOLUMES = {
    "C": F(1717, 8192),
    "Q": F(9185069468583833, 146081389744226304),
    "E": F(10658098255011916449318509, 68475651442606080000000000),
    "F": F(7280153240719060220104571, 616280862983454720000000000),
    "T": F(5507086513, 173946175488),
    "K": F(602110129, 43486543872),
    "BSt": F(1281727528386311499990911876166511, 25940255058441281524973174784000000000),
    "BSg": F(325451674835828550681491, 68475651442606080000000000),
    "BSgRev": F(104898234852130241, 21035720123168587776),
}

PROBABILITIES = {
    "p_CW": F(1717, 2048),
    "runoff_win": F(9185069468583833, 12173449145352192),
    "condorcet_efficiency": F(10658098255011916449318509, 14352135440302080000000000),
    "runoff_efficiency": F(19627224002877404784030049, 21528203160453120000000000),
    "cw_and_cl": F(5507086513, 7247757312),
    "cw_no_cl": F(569280335, 7247757312),
    "cl_no_cw": F(569280335, 7247757312),
    "no_cw_no_cl": F(602110129, 7247757312),
    "strict_borda": F(1281727528386311499990911876166511, 821261107784328041072841984000000000),
    "strong_borda": F(325451674835828550681491, 14352135440302080000000000),
    "reverse_strong_borda": F(104898234852130241, 4408976007260798976),
}

DECIMALS = {
    "p_CW": "0.8384",
    "runoff_win": "0.7545",
    "condorcet_efficiency": "0.7426",
    "runoff_efficiency": "0.9117",
    "cw_and_cl": "0.7598",
    "cw_no_cl": "0.07855",
    "cl_no_cw": "0.07855",
    "no_cw_no_cl": "0.0831",
    "strict_borda": "0.00156",
    "strong_borda": "0.02268",
    "reverse_strong_borda": "0.02379",
}

# vertices and support hyperplanes of the closures
COMBINATORICS = {
    "C": (234, 27),
    "Q": (2418, 28),
    "E": (4644, 30),
    "F": (4572, 30),
    "T": (491, 30),
    "K": (262, 28),
    "BSt": (6363, 33),
    "BSg": (3216, 30),
    "BSgRev": (3432, 30),
}

# symmetrized: (projected dimension, vertices, support hyperplanes)
SYMMETRIZED = {
    "C": (8, 16, 11),
    "Q": (6, 12, 8),
    "E": (13, 170, 18),
    "F": (13, 163, 18),
    "K": (14, 63, 18),
    "BSg": (13, 100, 18),
    "BSgRev": (13, 115, 19),
}

MIN_VOTERS = {"C": 1, "E": 1, "T": 1, "Q": 3, "K": 3, "BSgRev": 3, "BSg": 5, "BSt": 9}

# Ehrhart series numerators over (1-t)(1-t^2)^14(1-t^4)^9
C_DENOMINATOR = (1,) + (2,) * 14 + (4,) * 9
C_CLOSED_NUMERATOR = [
    1, 5, 133, 363, 4581, 8655, 69821, 100915, 596834, 697232, 3255226, 3176870, 12235441,
    10182887, 33268048, 23917200, 67509138, 42243510, 104272000, 56990048, 123966919, 59177761,
    113925878, 47336170, 80758791, 28993857, 43770180, 13415068, 17837843, 4580485, 5320122,
    1111974, 1113216, 180850, 152891, 17845, 12346, 890, 481, 15, 6,
]
C_NUMERATOR = [
    0, 6, 15, 481, 890, 12346, 17845, 152891, 180850, 1113216, 1111974, 5320122, 4580485,
    17837843, 13415068, 43770180, 28993857, 80758791, 47336170, 113925878, 59177761, 123966919,
    56990048, 104272000, 42243510, 67509138, 23917200, 33268048, 10182887, 12235441, 3176870,
    3255226, 697232, 596834, 100915, 69821, 8655, 4581, 363, 133, 5, 1,
]

# denominators of the closed series of T and K
T_DENOMINATOR = (1,) + (2,) * 14 + (4,) * 5 + (12,) * 3 + (24,)
K_DENOMINATOR = (1,) + (2,) * 14 + (4,) * 5 + (12,) * 4
