"""Builders for the bundled fixture catalog (JSON-ready dicts).

The JSON files under ``fixtures/`` are generated from these functions and
a test keeps the two in sync.
"""

FILIFORM_SIZES = (4, 5, 6, 7, 8)


def _zeros(d):
    return [[0] * d for _ in range(d)]


def _unit(d, i, j, c=1):
    m = _zeros(d)
    m[i][j] = c
    return m


def _brackets(pairs):
    return {f"{i},{j}": {str(k): [c, 1, 0, 1] for k, c in row.items()} for (i, j), row in pairs.items()}


def heisenberg3():
    return {
        "name": "heisenberg3",
        "dim": 3,
        "basis": ["e1", "e2", "e3"],
        "brackets": _brackets({(0, 1): {2: 1}}),
        "levi": [],
        "subgroups": {"N": [[0, 0, 1]], "E": []},
        "rep": {"faithful": True,
                "matrices": [_unit(3, 0, 1), _unit(3, 1, 2), _unit(3, 0, 2)]},
    }


def filiform(n):
    """``[e_0, e_j] = e_{j+1}`` with the affine representation of size ``n``.

    ``e_0`` acts by the shift on ``span(e_1, ..., e_{n-1})`` and ``e_j``
    (``j >= 1``) is the translation by the ``j``-th basis column.
    """
    if n < 3:
        raise ValueError("filiform algebras need n >= 3")
    mats = []
    shift = _zeros(n)
    for j in range(1, n - 1):
        shift[j][j - 1] = 1
    mats.append(shift)
    for j in range(1, n):
        mats.append(_unit(n, j - 1, n - 1))
    subgroups = {f"H{k}": [[1 if i == j else 0 for i in range(n)] for j in range(k, n)]
                 for k in range(2, n)}
    subgroups["N"] = subgroups["H2"]
    subgroups["E"] = []
    return {
        "name": f"filiform{n}",
        "dim": n,
        "basis": [f"e{i}" for i in range(n)],
        "brackets": _brackets({(0, j): {j + 1: 1} for j in range(1, n - 1)}),
        "levi": [],
        "subgroups": subgroups,
        "rep": {"faithful": True, "matrices": mats},
    }


def affine2():
    return {
        "name": "affine2",
        "dim": 2,
        "basis": ["x", "y"],
        "brackets": _brackets({(0, 1): {1: 1}}),
        "levi": [],
        "subgroups": {"N": [[0, 1]], "E": [[0, 1]]},
        "semidirect": {"b": [[0, 1]], "l": [[1, 0]]},
        "rep": {"faithful": True, "matrices": [[[1, 0], [0, 0]], _unit(2, 0, 1)]},
    }


def sl2():
    return {
        "name": "sl2",
        "dim": 3,
        "basis": ["h", "e", "f"],
        "brackets": _brackets({(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}}),
        "levi": [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        "subgroups": {"N": [], "E": []},
        "rep": {"faithful": True,
                "matrices": [[[1, 0], [0, -1]], _unit(2, 0, 1), _unit(2, 1, 0)]},
    }


def sixdim():
    """Two Heisenberg algebras: ``g/e`` on ``x1, x2, x3`` and ``e`` on ``y1, y2, y3``.

    ``x1`` acts on ``e`` by ``y1 -> y1, y2 -> -y2, y3 -> 0``.  The
    representation is the block sum of a 3x3 block where ``x1`` is
    diagonal and the ``y``'s are the Heisenberg matrices, and a 3x3 block
    carrying the standard representation of ``g/e``.
    """
    def block(a, b):
        m = _zeros(6)
        for i in range(3):
            for j in range(3):
                m[i][j] = a[i][j]
                m[i + 3][j + 3] = b[i][j]
        return m

    z = _zeros(3)
    diag = [[1, 0, 0], [0, 0, 0], [0, 0, 1]]
    mats = [block(diag, _unit(3, 0, 1)), block(z, _unit(3, 1, 2)), block(z, _unit(3, 0, 2)),
            block(_unit(3, 0, 1), z), block(_unit(3, 1, 2), z), block(_unit(3, 0, 2), z)]
    return {
        "name": "sixdim",
        "dim": 6,
        "basis": ["x1", "x2", "x3", "y1", "y2", "y3"],
        "brackets": _brackets({(0, 1): {2: 1}, (3, 4): {5: 1}, (0, 3): {3: 1}, (0, 4): {4: -1}}),
        "levi": [],
        "subgroups": {"N": [[0, 0, 1, 0, 0, 0], [0, 0, 0, 1, 0, 0], [0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1]],
                      "E": [[0, 0, 0, 1, 0, 0], [0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1]]},
        "rep": {"faithful": True, "matrices": mats},
    }


def cplx():
    """The additive group of C with ``pi(z) = diag(e^z, e^{iz})``."""
    return {
        "name": "cplx",
        "dim": 1,
        "basis": ["z"],
        "brackets": {},
        "levi": [],
        "subgroups": {"N": [], "E": []},
        "rep": {"faithful": True, "matrices": [[[1, 0], [0, [0, 1]]]]},
    }


def builders():
    out = {"heisenberg3": heisenberg3, "affine2": affine2, "sl2": sl2,
           "sixdim": sixdim, "cplx": cplx}
    for n in FILIFORM_SIZES:
        out[f"filiform{n}"] = (lambda n=n: filiform(n))
    return out
