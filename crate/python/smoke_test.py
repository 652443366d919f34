"""Smoke test for the isotemporal extension module.

Build it first, e.g. `maturin develop --release -m crates/python/Cargo.toml`.
"""

from pathlib import Path

import isotemporal

FIXTURES = Path(__file__).resolve().parent.parent / "crates" / "core" / "tests" / "fixtures"


def main() -> None:
    assert isotemporal.diaster_formula(4, 7) == 40
    assert isotemporal.lattice_count(3, 3) == 10
    assert isotemporal.diaster_formula(0, 3) is None

    for method in ("formula", "lattice", "brute", "swap"):
        assert isotemporal.count("diaster:2,3", method) == 12, method
    assert isotemporal.count("cycle:5", "formula") is None
    assert len(isotemporal.classes("diaster:1,2")) == 6

    left = isotemporal.TemporalNetwork.from_text((FIXTURES / "fig1-left.net").read_text())
    right = isotemporal.TemporalNetwork.from_text((FIXTURES / "fig1-right.net").read_text())
    assert left.is_temporally_isomorphic(right)
    assert isotemporal.is_temporal_isomorphic(left, right)
    assert not left.is_label_isomorphic(right)
    assert left.relabeled([2, 3, 1, 4, 5]) == right
    assert left.max_path_length() == max(len(labels) for labels, _ in left.paths())

    n = isotemporal.TemporalNetwork(5, [(0, 1), (0, 2), (1, 3), (1, 4)], [3, 1, 2, 4])
    m = n.relabeled([3, 2, 1, 4])
    assert isotemporal.swap_script(n, m) == [(1, 1, 2)]
    assert isotemporal.TemporalNetwork.from_text(n.to_text()) == n

    a, b = [False, True, True, False], [True, False, False, True]
    state = list(a)
    for i in isotemporal.binary_swap_sequence(a, b):
        state[i], state[i + 1] = state[i + 1], state[i]
    assert state == b

    rows = isotemporal.verify(4)
    assert all(r["verdict"] != "DISAGREE" for r in rows)

    try:
        isotemporal.TemporalNetwork(2, [(0, 1), (0, 1)], [1, 1])
    except ValueError:
        pass
    else:
        raise AssertionError("duplicate labels accepted")

    print(f"smoke test passed ({len(rows)} verify rows)")


if __name__ == "__main__":
    main()
