"""Regression suite: ten published FRI-FC test problems.

Problems are stored in the plain-text problem format and parsed on demand, so
the embedded data also exercises :func:`frifc.problem.parse_problem`.  Numbers
are transcribed at the printed 4-decimal precision.  A handful of printed
tokens are malformed in the source (``01232``, ``0..6541``, ``0..5089``,
``05671``); they are entered here as the evident intended value.

Reference values (one :class:`Reference` per problem) hold the published
solver results: objective values, total value, admissible objective interval,
crisp optimum, super-optimum and its crisp violation vector.  ``x_star`` and
``x_star_star`` are kept exactly as printed.  Entries that are provably
misprinted are listed in :data:`ERRATA` with the corrected value; see
:func:`Reference.expected_x_star`.
"""
from __future__ import annotations

import io
from dataclasses import dataclass, field

from .problem import FriProblem, parse_problem

__all__ = ["Reference", "ERRATA", "appendix_suite", "appendix_problem", "PROBLEM_TEXT"]


PROBLEM_TEXT: dict[str, str] = {
    "A.1": """
4 6
-1.7005 -4.3370 -3.5848 7.7951 0.4787 9.3360
0.1359 0.8372 0.1439 0.8102 0.8317 0.0801
0.0866 0.1400 0.9757 0.1262 0.7061 0.8810
0.7325 0.0336 0.3292 0.6075 0.6609 0.6825
0.8851 0.3458 0.6788 0.5612 0.8223 0.3284
0.2014 0.0161 0.6792 0.8360
""",
    "A.2": """
5 6
6.1322 -1.5004 4.2041 0.1303 -7.0502 -9.3533
0.5847 0.1338 0.4806 0.2675 0.3970 0.3215
0.1819 0.1038 0.0074 0.0476 0.1761 0.0927
0.2044 0.2334 0.1171 0.3456 0.2832 0.3481
0.0659 0.4362 0.5850 0.3090 0.7723 0.4813
0.8992 0.0619 0.7021 0.0030 0.8549 0.8145
0.9366 0.1139 0.2031 0.8282 0.8752
""",
    "A.3": """
6 6
6.8552 -1.8291 8.6740 -6.4465 5.9379 -1.7184
0.3248 0.1426 0.1232 0.8051 0.1083 0.2499
0.7076 0.2252 0.7964 0.0571 0.6141 0.0879
0.1289 0.7975 0.0480 0.0046 0.0144 0.1980
0.5316 0.8095 0.8496 0.1967 0.5240 0.0389
0.6753 0.6560 0.3397 0.4811 0.3146 0.4192
0.0151 0.7319 0.4089 0.6728 0.6220 0.7515
0.6034 0.4401 0.5971 0.1162 0.0642 0.8811
""",
    "A.4": """
5 7
-5.9968 1.6453 7.2174 -6.3971 2.9091 1.7317 -9.5134
0.1556 0.7437 0.3357 0.9491 0.8195 0.7906 0.0144
0.8460 0.1222 0.4980 0.7749 0.7375 0.4606 0.3457
0.6406 0.5979 0.9258 0.2752 0.2663 0.4620 0.6144
0.5399 0.3409 0.4983 0.9553 0.7804 0.4636 0.7174
0.1448 0.1067 0.8405 0.8741 0.6756 0.8831 0.6736
0.0322 0.4687 0.8801 0.6245 0.8080
""",
    "A.5": """
6 8
-2.2349 9.8684 6.0145 -0.1409 4.4755 5.1849 -5.2513 7.4044
0.6685 0.8277 0.7281 0.1500 0.0963 0.9766 0.0665 0.0789
0.1002 0.7566 0.3847 0.2817 0.6514 0.7538 0.2835 0.4277
0.5461 0.8736 0.7027 0.3276 0.9032 0.3744 0.5540 0.5274
0.5924 0.2766 0.5094 0.3399 0.3381 0.9006 0.5930 0.4494
0.9426 0.0540 0.7771 0.8831 0.1892 0.4538 0.4534 0.3912
0.3466 0.2082 0.2217 0.2299 0.7907 0.0611 0.3830 0.9836
0.9642 0.0346 0.1792 0.7077 0.9931 0.3542
""",
    "A.6": """
7 7
3.9815 7.8181 9.1858 0.9443 -7.2275 -7.0141 -4.8498
0.8407 0.2511 0.9172 0.0540 0.0119 0.6020 0.2290
0.2543 0.6160 0.2858 0.5308 0.3371 0.2630 0.9133
0.8143 0.4733 0.7572 0.7792 0.1622 0.6541 0.1524
0.2435 0.3517 0.7537 0.9340 0.7943 0.6892 0.8258
0.9293 0.8308 0.3804 0.1299 0.3112 0.7482 0.5383
0.3500 0.5853 0.5678 0.5688 0.5285 0.4505 0.9961
0.1966 0.5497 0.0759 0.4694 0.1656 0.0838 0.0782
0.4427 0.1067 0.9619 0.0046 0.7749 0.8173 0.8687
""",
    "A.7": """
7 10
-6.2250 7.3391 7.0215 6.5683 1.2437 5.2404 4.1114 1.4945 7.7537 -0.0706
0.8376 0.5607 0.4054 0.9161 0.7397 0.0716 0.3919 0.2039 0.2089 0.5333
0.0516 0.9841 0.0849 0.2607 0.1426 0.3386 0.1199 0.4257 0.5544 0.3795
0.4259 0.7705 0.8464 0.3001 0.4591 0.6629 0.3465 0.5807 0.0754 0.7783
0.2721 0.0729 0.5261 0.4080 0.6138 0.5058 0.5298 0.0238 0.5426 0.8281
0.7275 0.3988 0.5304 0.8283 0.3916 0.9934 0.1053 0.7491 0.2099 0.8877
0.8102 0.0718 0.8724 0.4534 0.4194 0.4759 0.3741 0.0360 0.7298 0.2837
0.4767 0.1241 0.7166 0.9912 0.3778 0.8198 0.6201 0.2147 0.1651 0.6314
0.1699 0.3880 0.1850 0.2983 0.0652 0.7516 0.0027
""",
    "A.8": """
8 10
-0.6133 9.5958 8.9277 2.5328 4.5288 -3.2146 8.4352 9.0807 9.8011 2.4952
0.9576 0.1524 0.4591 0.1542 0.6114 0.3348 0.5124 0.5708 0.5980 0.4008
0.0317 0.1542 0.0775 0.4483 0.4208 0.2367 0.2025 0.2892 0.7608 0.7968
0.4176 0.9340 0.5365 0.5206 0.3109 0.6503 0.9856 0.7474 0.0019 0.3848
0.5935 0.2486 0.9793 0.3124 0.2278 0.9957 0.1159 0.8994 0.6739 0.7614
0.2106 0.3407 0.2622 0.4472 0.3391 0.7915 0.3352 0.6066 0.1036 0.2750
0.2554 0.2953 0.2070 0.3073 0.8167 0.2889 0.1124 0.7823 0.5541 0.2769
0.6388 0.2688 0.6292 0.7254 0.9561 0.5072 0.0170 0.4677 0.3709 0.7724
0.5010 0.2386 0.5260 0.3181 0.2825 0.2465 0.6896 0.1970 0.4726 0.8429
0.9750 0.0237 0.5693 0.5947 0.0129 0.7476 0.8917 0.9195
""",
    "A.9": """
9 9
2.7276 -9.1572 -7.1452 0.9314 -1.9806 -0.2452 8.1128 2.4546 2.85
0.6637 0.7432 0.8188 0.5660 0.6163 0.6756 0.8136 0.9008 0.1373
0.4567 0.8137 0.1834 0.5090 0.8100 0.8336 0.0360 0.6520 0.7940
0.9142 0.6858 0.3362 0.4732 0.9350 0.3233 0.1749 0.3490 0.6930
0.3936 0.8700 0.9014 0.4516 0.8772 0.2706 0.2962 0.7862 0.8683
0.5089 0.8362 0.9459 0.6415 0.7242 0.3912 0.0342 0.8280 0.1411
0.1390 0.9381 0.4557 0.4086 0.4804 0.7904 0.2785 0.5207 0.4494
0.1239 0.4953 0.3745 0.3644 0.8924 0.5274 0.5470 0.6684 0.5228
0.6215 0.6577 0.2243 0.2977 0.8589 0.8018 0.0108 0.4651 0.9415
0.6028 0.2612 0.0686 0.7647 0.0017 0.2003 0.2626 0.1225 0.5671
0.6412 0.0190 0.1702 0.6046 0.2470 0.8351 0.7981 0.4645 0.6098
""",
    "A.10": """
10 10
0.1117 -5.4486 4.4966 2.1297 -0.4456 -6.9081 6.4627 4.4522 5.6057 -5.7421
0.7906 0.9957 0.0597 0.5569 0.8766 0.4642 0.7950 0.4590 0.5371 0.1593
0.4117 0.3598 0.0890 0.7960 0.6433 0.7929 0.9148 0.2328 0.5097 0.8664
0.8080 0.8941 0.6725 0.9067 0.6509 0.5584 0.0008 0.0250 0.5247 0.0786
0.0878 0.9908 0.1796 0.9319 0.1598 0.0141 0.8120 0.0548 0.7654 0.8247
0.0338 0.7684 0.8985 0.1536 0.8718 0.2336 0.8460 0.5478 0.6549 0.7402
0.8519 0.1464 0.0081 0.5379 0.8072 0.3497 0.9215 0.9925 0.1810 0.1014
0.2547 0.9694 0.0436 0.7910 0.0878 0.7878 0.4435 0.6274 0.8116 0.3670
0.1954 0.8315 0.7230 0.8740 0.4403 0.2030 0.0607 0.2924 0.2905 0.8977
0.7841 0.2572 0.5130 0.9844 0.5482 0.5547 0.2540 0.7913 0.8254 0.0586
0.1628 0.6455 0.8100 0.2105 0.3994 0.9538 0.9343 0.3079 0.1052 0.5025
0.0294 0.9041 0.9020 0.9824 0.8485 0.1962 0.4210 0.2162 0.8787 0.3932
""",
}


@dataclass(frozen=True)
class Reference:
    """Published results for one test problem (d_i = d0 = 0.1, v = 0.5)."""

    mu_F: float
    mu_0: float
    mu_T: float
    obj_star_star: float
    obj_star: float
    interval: tuple[float, float]
    x_star: tuple[float, ...]
    x_star_star: tuple[float, ...]
    ccv: tuple[float, ...]
    errata: dict[int, float] = field(default_factory=dict)

    def expected_x_star(self) -> tuple[float, ...]:
        """Printed x* with misprinted components replaced by their corrections."""
        x = list(self.x_star)
        for j, value in self.errata.items():
            x[j] = value
        return tuple(x)


# (problem id, 0-based component) -> corrected value.  The printed A.2 x*_5
# (0.0165) contradicts both the closed-form maximum solution (0.6468) and the
# published z* = -11.3228, which is only reproduced with 0.6468.
ERRATA: dict[str, dict[int, float]] = {
    "A.2": {4: 0.6468},
}


_REFERENCE_ROWS: dict[str, tuple] = {
    # id: (muF, mu0, muT, c'x**, c'x*, [z0, z0+d0], x*, x**, CCV(x**))
    "A.1": (0.9910, 0.9910, 0.9910, -0.9232, -0.8741, (-0.9241, -0.8241),
            (0.1859, 0.115, 0.0165, 0, 0, 0),
            (0.1964, 0.1215, 0.0174, 0, 0, 0),
            (0, 0.0009, 0, 0)),
    "A.2": (0.9933, 0.9933, 0.9933, -11.3722, -11.3228, (-11.3728, -11.2728),
            (0, 0.8702, 0, 0, 0.0165, 0.5835),
            (0, 0.8731, 0, 0, 0.6506, 0.5854),
            (0, 0.0007, 0.0007, 0, 0)),
    "A.3": (0.9765, 0.9765, 0.9765, -1.3501, -1.3024, (-1.3524, -1.2524),
            (0, 0.0979, 0, 0.1334, 0, 0.1532),
            (0, 0.1015, 0, 0.1383, 0, 0.1588),
            (0, 0, 0, 0, 0.0023, 0)),
    "A.4": (0.9916, 0.9916, 0.9916, -9.7886, -9.7395, (-9.7895, -9.6895),
            (0.2069, 0, 0, 0.0339, 0, 0, 0.8705),
            (0.2123, 0, 0, 0.0348, 0, 0, 0.8717),
            (0.0008, 0, 0, 0.0008, 0)),
    "A.5": (0.9793, 0.9793, 0.9793, -1.4395, -1.3916, (-1.4416, -1.3416),
            (0.3282, 0, 0, 0.1228, 0, 0, 0.1221, 0),
            (0.3319, 0, 0, 0.1302, 0, 0, 0.1294, 0),
            (0, 0.0021, 0.0021, 0, 0, 0)),
    "A.6": (0.9809, 0.9809, 0.9809, -0.1638, -0.1157, (-0.1657, -0.0657),
            (0, 0, 0, 0, 0.0058, 0.0067, 0.0056),
            (0, 0, 0, 0, 0.0082, 0.0094, 0.0079),
            (0, 0, 0, 0.0019, 0, 0, 0)),
    "A.7": (0.9647, 0.9647, 0.9647, -0.0820, -0.0356, (-0.0856, 0.0144),
            (0.0057, 0, 0, 0, 0, 0, 0, 0, 0, 0.0043),
            (0.0131, 0, 0, 0, 0, 0, 0, 0, 0, 0.0099),
            (0, 0, 0, 0, 0, 0, 0.0035)),
    "A.8": (0.9373, 0.9373, 0.9373, -0.1337, -0.0899, (-0.14, -0.04),
            (0.0613, 0, 0, 0, 0, 0.0163, 0, 0, 0, 0),
            (0.0910, 0, 0, 0, 0, 0.0242, 0, 0, 0, 0),
            (0, 0, 0, 0, 0.0063, 0, 0, 0)),
    "A.9": (0.9907, 0.9907, 0.9907, -1.0552, -1.0061, (-1.0561, -0.9561),
            (0, 0.0234, 0.1036, 0, 0.0235, 0.0228, 0, 0, 0),
            (0, 0.0245, 0.1087, 0, 0.0246, 0.0240, 0, 0, 0),
            (0, 0.0009, 0, 0, 0, 0, 0, 0, 0)),
    "A.10": (0.9914, 0.9914, 0.9914, -1.7222, -1.6731, (-1.7231, -1.6231),
             (0, 0.0295, 0, 0, 0.0335, 0.0633, 0, 0, 0, 0.1846),
             (0, 0.0304, 0, 0, 0.0345, 0.0652, 0, 0, 0, 0.1900),
             (0.0009, 0, 0, 0, 0, 0, 0, 0, 0, 0)),
}

# Proposed-method column of the published error table.
TABLE5_ERROR: dict[str, float] = {
    "A.1": 0.00056521, "A.2": 0.00047085, "A.3": 0.0013702, "A.4": 0.00058783,
    "A.5": 0.0013822, "A.6": 0.0010926, "A.7": 0.0020163, "A.8": 0.0035273,
    "A.9": 0.00051485, "A.10": 0.00047489,
}

# Per-problem total-value differences (proposed method minus baseline) as printed
# in the paired t-test table, with the printed summary rows.
TABLE7_DIFFS: dict[str, tuple[float, ...]] = {
    "mpso": (0.0151, 0.06166, 0.14283, 0.4739, 0.05218, 0.0425, 0.00037, 0.00714, 0.04889, 0.0751),
    "opso": (0.89941, 0.64426, 0.93779, 0.95995, 0.97927, 0.94958, 0.96472, 0.93729, 0.99073, 0.99137),
    "acor": (0.93182, 0.37657, 0.97373, 0.9916, 0.97927, 0.98088, 0.96472, 0.93729, 0.99073, 0.99137),
    "de": (0.97217, 0.50079, 0.97651, 0.98287, 0.97927, 0.98088, 0.96472, 0.93729, 0.99073, 0.99137),
    "hs": (0.94542, 0.50079, 0.97651, 0.98754, 0.97927, 0.98088, 0.96472, 0.93729, 0.99073, 0.99137),
}
TABLE7_SUMMARY: dict[str, dict[str, float]] = {
    "mpso": {"mean": 0.091967, "sd": 0.14025, "sem": 0.044352},
    "opso": {"mean": 0.92544, "sd": 0.10266, "sem": 0.032465},
    "acor": {"mean": 0.9118, "sd": 0.18927, "sem": 0.059853},
    "de": {"mean": 0.92766, "sd": 0.15079, "sem": 0.047683},
    "hs": {"mean": 0.92545, "sd": 0.15035, "sem": 0.047546},
}

SUITE_IDS: tuple[str, ...] = tuple(PROBLEM_TEXT)


def _reference(pid: str) -> Reference:
    muF, mu0, muT, oss, os_, interval, xs, xss, ccv = _REFERENCE_ROWS[pid]
    return Reference(
        mu_F=muF, mu_0=mu0, mu_T=muT, obj_star_star=oss, obj_star=os_,
        interval=interval,
        x_star=tuple(float(v) for v in xs),
        x_star_star=tuple(float(v) for v in xss),
        ccv=tuple(float(v) for v in ccv),
        errata=dict(ERRATA.get(pid, {})),
    )


def appendix_problem(pid: str) -> FriProblem:
    """Parse a single Appendix-A problem by id (``"A.1"`` .. ``"A.10"``)."""
    return parse_problem(io.StringIO(PROBLEM_TEXT[pid]), id=pid)


def appendix_suite() -> list[tuple[FriProblem, Reference]]:
    """All ten Appendix-A problems paired with their published reference values."""
    return [(appendix_problem(pid), _reference(pid)) for pid in SUITE_IDS]
