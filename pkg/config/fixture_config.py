import os
from typing import Dict, List

FIXTURE_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "fixtures")


class FixtureConfig:
    """The shipped problem corpus with the verdict each file must produce."""

    # name -> expected verdict; "slow" fixtures take tens of seconds
    FIXTURES = {
        "cusp_yx": {"verdict": "Regulous", "description": "y/x on the cusp y^2 = x^3"},
        "sextic_yx": {"verdict": "Regulous", "description": "y/x on y^2 + (x^2 - 1)x^4"},
        "sextic_yx2": {"verdict": "NotRegulous", "description": "y/x^2 takes two values over the origin"},
        "three_lines": {"verdict": "Regulous", "description": "2xy/(x + y) on three concurrent lines"},
        "three_lines_restrict": {"verdict": "Regulous", "description": "the same function on the diagonal"},
        "four_var": {"verdict": "Regulous", "description": "stratified x/y, z/t, 0 with a graph system",
                     "slow": True},
        "four_var_alt": {"verdict": "Regulous", "description": "alternate last graph equation", "slow": True},
        "swan_cusp": {"verdict": "ProperlyRegulous", "description": "the Swan pair (y, x) on the cusp"},
        "swan_scan_cusp": {"verdict": "NotSeminormal", "description": "degree 2 slice on the cusp"},
        "swan_scan_node": {"verdict": "NoneFound", "description": "degree 2 slice on the node"},
        "swan_scan_line": {"verdict": "NoneFound", "description": "degree 3 slice on the affine line"},
        "member_zero": {"verdict": "Member", "description": "0 in the zero ideal"},
        "member_cusp": {"verdict": "Member", "description": "y^4 - x^6 in <y^2 - x^3>"},
        "radical_double_line": {"verdict": "Member", "description": "x in the radical of <x^2>"},
        "twisted_cubic_gb": {"verdict": "Computed", "description": "lex basis of the twisted cubic"},
        "twisted_cubic_eliminate": {"verdict": "Computed", "description": "implicit equation of the twisted cubic"},
        "saturate_axes": {"verdict": "Computed", "description": "<xy> : x^inf"},
        "quotient_axes": {"verdict": "Computed", "description": "<x^2 y> : x"},
        "cusp_conductor": {"verdict": "Computed", "description": "conductor of y/x on the cusp"},
        "cusp_subintegral": {"verdict": "Subintegral", "description": "Q[x, y] -> Q[x, y][y/x] on the cusp"},
        "cusp_seminormalize": {"verdict": "Computed", "description": "tower with one adjoined element"},
        "cusp_nullstellensatz": {"verdict": "Witness", "description": "t1^2 in <x> over the cusp tower"},
        "cusp_power_pair": {"verdict": "Regulous", "description": "(y/x)^2, (y/x)^3 in the ring"},
        "cusp_power_relation": {"verdict": "Regulous", "description": "y^2 in <x^3> + I"},
        "cusp_elementary": {"verdict": "Witness", "description": "elementary witness for y/x"},
    }

    @classmethod
    def path(cls, name: str) -> str:
        if name not in cls.FIXTURES:
            raise KeyError(f"unknown fixture {name!r}")
        return os.path.join(FIXTURE_DIR, f"{name}.problem")

    @classmethod
    def expected_verdict(cls, name: str) -> str:
        return cls.FIXTURES[name]["verdict"]

    @classmethod
    def names(cls, include_slow: bool = True) -> List[str]:
        return [name for name, info in cls.FIXTURES.items() if include_slow or not info.get("slow")]

    @classmethod
    def by_verdict(cls) -> Dict[str, List[str]]:
        grouped: Dict[str, List[str]] = {}
        for name, info in cls.FIXTURES.items():
            grouped.setdefault(info["verdict"], []).append(name)
        return grouped
