import numpy as np
import pytest

from aqopt.hamiltonians import (
    NmrSystem,
    build_driver,
    build_nmr,
    build_problem,
    gap_scan,
    interpolate,
)
from aqopt.linalg import SIGMA_X, IDENTITY_2, pauli_on, tensor
from aqopt.maxcut import WeightedGraph, payoff_table

PAPER_TABLE = np.array([0, 6, 7, 7, 5, 9, 8, 6], dtype=float)

# frozen from a 1001-point scan with three 10x refinement levels
GMIN_FIXTURE = 0.5236313605427814
SMIN_FIXTURE = 0.583814


def paper():
    return WeightedGraph(3, (2, 2, 2), ((0, 1, 2.0), (0, 2, 1.0), (1, 2, 3.0)))


def random_graph(rng, n):
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < 0.8:
                edges.append((i, j, float(rng.normal())))
    return WeightedGraph(n, tuple(rng.normal(size=n)), tuple(edges))


class TestBuildProblem:
    def test_paper_diagonal_is_payoff_table(self):
        diag = build_problem(paper()).diagonal
        assert np.array_equal(diag, PAPER_TABLE)

    def test_two_qubit_single_edge(self):
        g = WeightedGraph(2, (0, 0), ((0, 1, 1.0),))
        assert np.array_equal(build_problem(g).diagonal, [0, 1, 1, 0])

    def test_zero_weights(self):
        g = WeightedGraph(3, (0, 0, 0), ())
        assert np.array_equal(build_problem(g).diagonal, np.zeros(8))

    def test_identity_off_shifts_by_constant(self):
        g = paper()
        shift = (sum(g.node_weights) + sum(w for _, _, w in g.edges)) / 2
        off = build_problem(g, include_identity=False).diagonal
        assert np.allclose(PAPER_TABLE - shift, off, atol=1e-12)

    def test_diagonal_matches_payoff_exactly_random(self):
        # the builder uses +-1 sigma_z patterns, the payoff uses bit
        # arithmetic; identical accumulation order makes them agree bitwise
        rng = np.random.default_rng(2024)
        for _ in range(200):
            n = int(rng.integers(2, 5))
            g = random_graph(rng, n)
            assert np.array_equal(build_problem(g).diagonal, payoff_table(g).values)

    def test_operator_is_diagonal(self):
        op = build_problem(paper()).to_operator()
        assert np.array_equal(op.matrix, np.diag(PAPER_TABLE))


class TestBuildDriver:
    def test_single_qubit_eigenvalues(self):
        w = np.linalg.eigvalsh(build_driver(1).operator.matrix)
        assert np.allclose(w, [-1, 1])

    def test_three_qubit_spectrum(self):
        w = np.linalg.eigvalsh(build_driver(3).operator.matrix)
        assert np.allclose(w, [-3, -1, -1, -1, 1, 1, 1, 3])

    def test_top_eigenvector_uniform(self):
        w, v = np.linalg.eigh(build_driver(3).operator.matrix)
        top = v[:, -1]
        top = top / top[0]
        assert np.allclose(top / np.linalg.norm(top), np.full(8, 1 / np.sqrt(8)))

    def test_matches_explicit_sum(self):
        expected = sum(
            tensor([SIGMA_X if q == i else IDENTITY_2 for q in range(2)]).matrix
            for i in range(2)
        )
        assert np.array_equal(build_driver(2).operator.matrix, expected)

    def test_bad_n(self):
        with pytest.raises(ValueError):
            build_driver(0)


class TestInterpolate:
    def test_endpoints(self, h_b, h_p):
        assert np.array_equal(interpolate(h_b, h_p, 0.0).matrix, h_b.matrix)
        assert np.array_equal(interpolate(h_b, h_p, 1.0).matrix, h_p.matrix)

    def test_midpoint_eigenvalues_against_direct_sum(self, h_b, h_p):
        got = np.linalg.eigvalsh(interpolate(h_b, h_p, 0.5).matrix)
        direct = 0.5 * h_b.matrix + 0.5 * np.diag(PAPER_TABLE.astype(complex))
        assert np.allclose(got, np.linalg.eigvalsh(direct), atol=1e-12)

    def test_out_of_range(self, h_b, h_p):
        for s in (-0.1, 1.1):
            with pytest.raises(ValueError):
                interpolate(h_b, h_p, s)

    def test_accepts_wrapper_types(self, paper_graph):
        op = interpolate(build_driver(3), build_problem(paper_graph), 0.25)
        assert op.is_hermitian()

    def test_eigenvalue_continuity(self, h_b, h_p):
        step = 1e-3
        bound = np.linalg.norm(h_p.matrix - h_b.matrix, 2) * step + 1e-9
        prev = np.linalg.eigvalsh(interpolate(h_b, h_p, 0.0).matrix)
        for s in np.arange(step, 1.0 + step / 2, step):
            cur = np.linalg.eigvalsh(interpolate(h_b, h_p, float(min(s, 1.0))).matrix)
            assert np.abs(cur - prev).max() <= bound
            prev = cur


class TestGapScan:
    def test_driver_gap_at_zero_for_every_n(self):
        for n in (1, 2, 3, 4):
            g = WeightedGraph(n, tuple(range(1, n + 1)), ())
            res = gap_scan(build_driver(n).operator, build_problem(g).to_operator(),
                           grid_points=11, refine_levels=0)
            assert res.gaps[res.s_values == 0.0][0] == pytest.approx(2.0, abs=1e-12)

    def test_paper_endpoint_gaps(self, h_b, h_p):
        res = gap_scan(h_b, h_p, grid_points=101, refine_levels=0)
        assert res.gaps[res.s_values == 0.0][0] == pytest.approx(2.0, abs=1e-9)
        assert res.gaps[res.s_values == 1.0][0] == pytest.approx(1.0, abs=1e-9)

    def test_paper_gmin_fixture(self, h_b, h_p):
        res = gap_scan(h_b, h_p, grid_points=1001)
        assert res.g_min == pytest.approx(GMIN_FIXTURE, abs=1e-9)
        assert res.s_at_min == pytest.approx(SMIN_FIXTURE, abs=2e-6)
        assert res.g_min > 0

    def test_gmin_is_minimum_of_returned_gaps(self, h_b, h_p):
        res = gap_scan(h_b, h_p, grid_points=101)
        assert res.g_min == res.gaps.min()
        assert res.s_values.shape == res.gaps.shape
        assert (np.diff(res.s_values) > 0).all()

    def test_refinement_tightens(self, h_b, h_p):
        coarse = gap_scan(h_b, h_p, grid_points=101, refine_levels=0)
        fine = gap_scan(h_b, h_p, grid_points=101, refine_levels=3)
        assert fine.g_min <= coarse.g_min

    def test_bottom_two(self, h_b, h_p):
        res = gap_scan(h_b, h_p, grid_points=51, refine_levels=0, which="bottom-two")
        assert res.gaps[res.s_values == 0.0][0] == pytest.approx(2.0, abs=1e-12)
        # lowest two payoffs are 0 and 5
        assert res.gaps[res.s_values == 1.0][0] == pytest.approx(5.0, abs=1e-12)

    def test_bad_arguments(self, h_b, h_p):
        with pytest.raises(ValueError):
            gap_scan(h_b, h_p, grid_points=1)
        with pytest.raises(ValueError):
            gap_scan(h_b, h_p, which="middle")


class TestNmr:
    def test_single_spin(self):
        sys1 = NmrSystem(larmor_rad_s=(2 * np.pi * 100,), couplings_hz=())
        assert np.allclose(build_nmr(sys1).matrix, np.diag([-np.pi * 100, np.pi * 100]))

    def test_two_spin_coupling_pattern(self):
        sys2 = NmrSystem(larmor_rad_s=(0.0, 0.0), couplings_hz=((0, 1, 2.0),))
        assert np.allclose(build_nmr(sys2).matrix, np.diag([np.pi, -np.pi, -np.pi, np.pi]))

    def test_paper_system_against_pauli_sum(self):
        sys3 = NmrSystem(
            larmor_rad_s=(0.0, 0.0, 0.0),
            couplings_hz=((0, 1, 50.0), (0, 2, 224.0), (1, 2, -311.0)),
        )
        expected = np.zeros((8, 8), dtype=complex)
        for i, j, jij in sys3.couplings_hz:
            zz = pauli_on(3, "Z", i).matrix @ pauli_on(3, "Z", j).matrix
            expected += 0.5 * np.pi * jij * zz
        assert np.allclose(build_nmr(sys3).matrix, expected, atol=1e-9)

    def test_commutes_with_every_sigma_z(self):
        sys3 = NmrSystem(
            larmor_rad_s=(10.0, -20.0, 5.0),
            couplings_hz=((0, 1, 50.0), (1, 2, -311.0)),
        )
        h = build_nmr(sys3).matrix
        for i in range(3):
            z = pauli_on(3, "Z", i).matrix
            assert np.abs(h @ z - z @ h).max() <= 1e-12

    def test_from_dict_converts_hz(self):
        sys1 = NmrSystem.from_dict({"larmor_hz": [100.0], "couplings_hz": []})
        assert sys1.larmor_rad_s == (2 * np.pi * 100.0,)

    def test_from_json_file(self, tmp_path):
        import json

        path = tmp_path / "spins.json"
        path.write_text(json.dumps({
            "larmor_hz": [0.0, 0.0, 0.0],
            "couplings_hz": [[0, 1, 50.0], [0, 2, 224.0], [1, 2, -311.0]],
        }))
        system = NmrSystem.from_json(path)
        assert system.coupling_hz(0, 2) == 224.0
        assert system.n == 3

    def test_validation(self):
        with pytest.raises(ValueError):
            NmrSystem(larmor_rad_s=(0.0, 0.0), couplings_hz=((0, 0, 5.0),))
        with pytest.raises(ValueError):
            NmrSystem(larmor_rad_s=(0.0, 0.0), couplings_hz=((0, 1, 5.0), (1, 0, 5.0)))
        with pytest.raises(ValueError):
            NmrSystem(larmor_rad_s=(0.0,), couplings_hz=((0, 1, 5.0),))

    def test_coupling_lookup_symmetric(self):
        sys2 = NmrSystem(larmor_rad_s=(0.0, 0.0), couplings_hz=((0, 1, 7.0),))
        assert sys2.coupling_hz(1, 0) == 7.0
        assert sys2.coupling_hz(0, 1) == 7.0
