"""Smoke test for the arborlat extension module.

Build and install first, e.g. `pip install maturin && maturin develop -m crates/python/Cargo.toml`.
"""

from fractions import Fraction

import arborlat


def main():
    assert arborlat.ehrhart_qndk(2, 2, 1) == [1, Fraction(5, 2), Fraction(3, 2)]
    assert arborlat.f_poly(3, 1) == [6, 11, 2]
    assert arborlat.hstar_qnk(2, 1) == [1, 2]

    oct41 = arborlat.Arbor.octopus(4, 1)
    assert oct41.n == 4
    assert arborlat.h_vector(oct41) == [1, 13, 27, 13, 1]
    assert arborlat.to_gamma_basis([1, 13, 27, 13, 1], 4) == [1, 9, 3]
    assert arborlat.m_sequence_check([1, 12, 14])

    single = arborlat.Arbor(2, [[1, 2]], [-1])
    assert arborlat.hstar(single) == [1, 3]
    assert arborlat.descent_enumerator_tau(single) == [1, 3]
    assert arborlat.Arbor.from_json(single.to_json()) == single

    out = arborlat.park([3, 5, 3, 4, 1])
    assert out == {"spots": [3, 5, 4, 2, 1], "lucky": [1, 2, 5], "unlucky": 2}
    assert arborlat.unlucky_generating_poly(2, 3, 1) == [2, 3]
    assert arborlat.exc_enumerator(2, 2, 1) == [3, 1]

    # 2! Ehr(Q_{2,1}) = (t + 1)(3t + 2)
    assert arborlat.all_roots_real_in([2, 5, 3], -1, 0)
    assert not arborlat.all_roots_real_in([1, 0, 1])

    report = arborlat.sweep(3, "roots")
    assert (report["total"], report["passed"]) == (16, 16)
    reports = arborlat.check_conjecture(arborlat.Arbor.linear(3), "all")
    assert all(r["pass"] for r in reports)
    assert len(arborlat.enumerate_arbors(3)) == 16

    try:
        arborlat.Arbor(2, [[1], [2]], [-1, -1])
    except ValueError:
        pass
    else:
        raise AssertionError("two roots accepted")

    print("arborlat smoke test passed")


if __name__ == "__main__":
    main()
