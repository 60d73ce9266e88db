from __future__ import annotations

import logging
import re
from fractions import Fraction
from typing import Any, Dict, List, Optional

import numpy as np

from .matrix_helper import InoMatrixHelper
from .numeric_helper import EXACT, GaussianRational as G
from .subspace_helper import PairValidationError, SubspacePair
from .util_helper import InoUtilHelper, ProdVecError, ino_err, ino_ok

logger = logging.getLogger(__name__)

FIXTURE_NAMES = ("hakye-2x4", "example-4-6", "diagonal")

_DIAGONAL_RE = re.compile(r"^diagonal\((\d+),(\d+),(\d+)\)$")


def _rational(value: Any) -> Fraction:
    try:
        return Fraction(str(value).strip()) if not isinstance(value, Fraction) else value
    except (ValueError, ZeroDivisionError) as e:
        raise PairValidationError(f"❌ not a rational number: {value!r}") from e


def _two_rows(entries: List[Any]) -> List[List[Any]]:
    """z11..z14, z21..z24 coefficient list -> 2 x 4 matrix."""
    return [entries[:4], entries[4:]]


class InoFixtureHelper:
    @staticmethod
    def hakye_2x4(a: Any = 3, b: Any = 1) -> SubspacePair:
        """
        D: z12 = z21, z13 = z22, z14 = z23; E: b z11 + z14 - a z22 = 0,
        defined for 0 < b < 4a^3/27.
        """
        a, b = _rational(a), _rational(b)
        if not (0 < b < 4 * a ** 3 / 27):
            raise PairValidationError(f"❌ hakye-2x4 needs 0 < b < 4a^3/27, got a={a}, b={b}")
        d_perp = [
            [[0, 1, 0, 0], [-1, 0, 0, 0]],
            [[0, 0, 1, 0], [0, -1, 0, 0]],
            [[0, 0, 0, 1], [0, 0, -1, 0]],
        ]
        e_perp = [[[b, 0, 0, 1], [0, -a, 0, 0]]]
        return SubspacePair.create(2, 4, d_perp, e_perp, EXACT)

    @staticmethod
    def example_4_6() -> SubspacePair:
        d_perp = [
            _two_rows([1, -1, 3, -3, 2, G(1, 1), 0, 0]),
            _two_rows([G(-2, 3), 0, 0, 3, 1, 2, G(7, -1), -1]),
        ]
        e_perp = [
            _two_rows([11, 3, 1, 0, 0, 0, -2, 0]),
            _two_rows([0, 0, 0, 0, G(13, -39), 0, 0, G(-33, 9)]),
        ]
        return SubspacePair.create(2, 4, d_perp, e_perp, EXACT)

    @staticmethod
    def diagonal(k: int, l: int, n: Optional[int] = None) -> SubspacePair:
        """D = ∩_{j<=k} {z1j + j z2j = 0}, E = ∩_{i>k} {z1i - i z2i = 0}; det L = ∏(z+j) ∏(w-i)."""
        n = k + l if n is None else n
        if k < 0 or l < 0 or k + l != n or n < 2:
            raise PairValidationError(f"❌ diagonal needs k, l >= 0 and k + l = n >= 2, got ({k},{l},{n})")

        def _vec(j: int, c: int) -> List[List[int]]:
            A = [[0] * n, [0] * n]
            A[0][j - 1] = 1
            A[1][j - 1] = c
            return A

        d_perp = [_vec(j, j) for j in range(1, k + 1)]
        e_perp = [_vec(i, -i) for i in range(k + 1, n + 1)]
        return SubspacePair.create(2, n, d_perp, e_perp, EXACT)

    @staticmethod
    def random_pair(m: int, n: int, k: int, l: int, seed: int, denominator_bits: int = 16) -> SubspacePair:
        """
        k + l hyperplane vectors whose real and imaginary parts are standard
        normals rounded to multiples of 2^-denominator_bits. Dependent draws
        (a measure-zero event) are redrawn from the same stream.
        """
        if m < 2 or n < 2 or not (0 <= k <= m * n and 0 <= l <= m * n):
            raise PairValidationError(f"❌ random_pair parameters out of range: m={m}, n={n}, k={k}, l={l}")
        rng = np.random.default_rng(seed)
        denom = 1 << denominator_bits

        def _draw(count: int) -> List[List[List[G]]]:
            while True:
                re_part = rng.standard_normal((count, m, n))
                im_part = rng.standard_normal((count, m, n))
                vecs = [
                    [[G(Fraction(int(round(re_part[s, i, j] * denom)), denom),
                        Fraction(int(round(im_part[s, i, j] * denom)), denom)) for j in range(n)] for i in range(m)]
                    for s in range(count)
                ]
                flat = [[v for row in A for v in row] for A in vecs]
                if count == 0 or InoMatrixHelper.rank(flat, EXACT) == count:
                    return vecs
                logger.debug("random_pair: dependent draw, resampling")

        return SubspacePair.create(m, n, _draw(k), _draw(l), EXACT, check_independent=False)

    @staticmethod
    def parse_name(name: str) -> Dict[str, Any]:
        """'diagonal(1,2,3)' -> {"name": "diagonal", "k": 1, "l": 2, "n": 3}; other names pass through."""
        m = _DIAGONAL_RE.match(name.replace(" ", ""))
        if m:
            k, l, n = (int(g) for g in m.groups())
            return {"name": "diagonal", "k": k, "l": l, "n": n}
        return {"name": name}

    @staticmethod
    def fixture(name: str, **params: Any) -> dict:
        """Named fixture as an ino result: {"success", "msg", "pair"}."""
        parsed = InoFixtureHelper.parse_name(name)
        params = {**{k: v for k, v in params.items() if v is not None}, **{k: v for k, v in parsed.items() if k != "name"}}
        try:
            if parsed["name"] == "hakye-2x4":
                pair = InoFixtureHelper.hakye_2x4(params.get("a", 3), params.get("b", 1))
            elif parsed["name"] == "example-4-6":
                pair = InoFixtureHelper.example_4_6()
            elif parsed["name"] == "diagonal":
                if "k" not in params or "l" not in params:
                    raise PairValidationError("❌ diagonal needs k and l (diagonal(k,l,n) or --k/--l)")
                pair = InoFixtureHelper.diagonal(int(params["k"]), int(params["l"]), params.get("n"))
            else:
                raise PairValidationError(f"❌ unknown fixture {name!r}; choose from {', '.join(FIXTURE_NAMES)}")
        except ProdVecError as e:
            return ino_err(str(e), error_kind=InoUtilHelper.error_kind(e), pair=None)
        return ino_ok(f"✅ fixture {parsed['name']}", pair=pair)
