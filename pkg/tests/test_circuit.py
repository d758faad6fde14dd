import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from nfccoil import (
    BadRange,
    ChipModel,
    ImpedancePoint,
    NonPositiveComponent,
    NonPositiveFrequency,
    NoResonanceInRange,
    TagNetwork,
    Topology,
    TuningSolution,
    Untunable,
    ZeroResistance,
    ZeroSeriesCapacitor,
    equivalent_capacitance,
    find_resonance,
    impedance_at,
    q_factor,
    required_equivalent_capacitance,
    resonance_frequency,
    snap_to_series,
    sweep,
    synthesize_tuning,
)

PF = 1e-12
UH = 1e-6
MHZ = 1e6


def table2_network(which, rc=math.inf, rs=None):
    if which == 1:
        tuning = TuningSolution("series", 56 * PF, 14.06 * MHZ)
        return TagNetwork(4.85 * UH, 10.0 if rs is None else rs, ChipModel(50 * PF, rc), tuning)
    tuning = TuningSolution("parallel", 30 * PF, 13.98 * MHZ)
    return TagNetwork(1.62 * UH, 2.0 if rs is None else rs, ChipModel(50 * PF, rc), tuning)


class TestEquivalentCapacitance:
    def test_series(self):
        assert equivalent_capacitance(50 * PF, 56 * PF, "series") == pytest.approx(26.415 * PF, rel=1e-4)

    def test_parallel(self):
        assert equivalent_capacitance(50 * PF, 30 * PF, "parallel") == pytest.approx(80 * PF)

    def test_none(self):
        assert equivalent_capacitance(50 * PF, 0, "none") == 50 * PF

    def test_zero_series(self):
        with pytest.raises(ZeroSeriesCapacitor):
            equivalent_capacitance(50 * PF, 0, Topology.SERIES)

    @given(cc=st.floats(1, 1000), ct=st.floats(1, 1000))
    def test_ordering(self, cc, ct):
        cc, ct = cc * PF, ct * PF
        assert equivalent_capacitance(cc, ct, "series") < min(cc, ct)
        assert equivalent_capacitance(cc, ct, "parallel") > max(cc, ct)


class TestResonance:
    def test_table2_antenna1(self):
        ceq = equivalent_capacitance(50 * PF, 56 * PF, "series")
        assert resonance_frequency(4.85 * UH, ceq) == pytest.approx(14.06 * MHZ, rel=5e-4)

    def test_table2_antenna2(self):
        assert resonance_frequency(1.62 * UH, 80 * PF) == pytest.approx(13.98 * MHZ, rel=5e-4)

    def test_quadruple_capacitance_halves_frequency(self):
        assert resonance_frequency(2 * UH, 400 * PF) == pytest.approx(
            resonance_frequency(2 * UH, 100 * PF) / 2, rel=1e-15)

    @pytest.mark.parametrize("ls,ceq", [(0, 1e-12), (1e-6, 0), (-1e-6, 1e-12)])
    def test_non_positive(self, ls, ceq):
        with pytest.raises(NonPositiveComponent):
            resonance_frequency(ls, ceq)

    def test_required_capacitance(self):
        assert required_equivalent_capacitance(4.85 * UH, 13.56 * MHZ) == pytest.approx(28.41 * PF, rel=5e-4)
        assert required_equivalent_capacitance(1.62 * UH, 13.56 * MHZ) == pytest.approx(85.04 * PF, rel=5e-4)

    @given(ls=st.floats(1e-8, 1e-3), f=st.floats(1e3, 1e9))
    def test_round_trip(self, ls, f):
        c = required_equivalent_capacitance(ls, f)
        assert resonance_frequency(ls, c) == pytest.approx(f, rel=1e-6)


class TestSynthesis:
    def test_antenna1_series(self):
        sol = synthesize_tuning(4.85 * UH, ChipModel(), 13.56 * MHZ)
        assert sol.topology is Topology.SERIES
        assert sol.c_tune == pytest.approx(65.8 * PF, rel=1e-3)
        assert sol.achieved_frequency == pytest.approx(13.56 * MHZ, rel=1e-9)
        assert not sol.snapped

    def test_antenna2_parallel(self):
        sol = synthesize_tuning(1.62 * UH, ChipModel(), 13.56 * MHZ)
        assert sol.topology is Topology.PARALLEL
        assert sol.c_tune == pytest.approx(35.04 * PF, rel=1e-3)
        assert sol.achieved_frequency == pytest.approx(13.56 * MHZ, rel=1e-9)

    def test_boundary_none(self):
        f = 13.56 * MHZ
        ls = 1 / ((2 * math.pi * f) ** 2 * 50 * PF)
        sol = synthesize_tuning(ls, ChipModel(), f)
        assert sol.topology is Topology.NONE
        assert sol.c_tune == 0
        assert sol.achieved_frequency == f

    @pytest.mark.parametrize("snap,expected_pf", [("e12", 68), ("e24", 68)])
    def test_snapped_series(self, snap, expected_pf):
        sol = synthesize_tuning(4.85 * UH, ChipModel(), 13.56 * MHZ, snap)
        assert sol.snapped
        assert sol.c_tune == pytest.approx(expected_pf * PF, rel=1e-12)
        ceq = equivalent_capacitance(50 * PF, sol.c_tune, "series")
        assert sol.achieved_frequency == resonance_frequency(4.85 * UH, ceq)

    def test_snapped_parallel_e24(self):
        sol = synthesize_tuning(1.62 * UH, ChipModel(), 13.56 * MHZ, "e24")
        assert sol.c_tune == pytest.approx(36 * PF, rel=1e-12)
        assert sol.achieved_frequency == pytest.approx(
            resonance_frequency(1.62 * UH, 86 * PF), rel=1e-12)

    def test_unknown_snap(self):
        with pytest.raises(ValueError):
            synthesize_tuning(1 * UH, ChipModel(), 13.56 * MHZ, "e96")

    def test_untunable(self):
        with pytest.raises(NonPositiveComponent):
            synthesize_tuning(0.0, ChipModel(), 13.56 * MHZ)

    @given(ls=st.floats(0.05, 50), f=st.floats(1, 50), cc=st.floats(5, 200))
    def test_topology_and_exactness(self, ls, f, cc):
        ls, f, chip = ls * UH, f * MHZ, ChipModel(cc * PF)
        c_req = required_equivalent_capacitance(ls, f)
        try:
            sol = synthesize_tuning(ls, chip, f)
        except Untunable:
            assert c_req == pytest.approx(chip.capacitance_cc, rel=1e-6)
            return
        if sol.topology is Topology.PARALLEL:
            assert c_req > chip.capacitance_cc
        elif sol.topology is Topology.SERIES:
            assert c_req < chip.capacitance_cc
        assert abs(sol.achieved_frequency - f) / f < 1e-9


class TestESeries:
    @pytest.mark.parametrize("value,series,expected", [
        (65.76e-12, "e12", 68e-12),
        (35.04e-12, "e24", 36e-12),
        (9.6e-12, "e12", 10e-12),  # rolls into the next decade
        (1.0e-9, "e24", 1.0e-9),
        (11.0, "e12", 10.0),  # exact relative-error tie goes to the smaller value
    ])
    def test_snap(self, value, series, expected):
        assert snap_to_series(value, series) == pytest.approx(expected, rel=1e-12)


class TestImpedance:
    def test_antenna1_resonance(self):
        z = impedance_at(table2_network(1), 14.06 * MHZ)
        assert abs(z.imag) < 0.1 * abs(impedance_at(table2_network(1), 13 * MHZ).imag)
        f_r = resonance_frequency(4.85 * UH, equivalent_capacitance(50 * PF, 56 * PF, "series"))
        assert abs(impedance_at(table2_network(1), f_r).imag) < 0.1

    def test_low_frequency_opens(self):
        mags = [abs(impedance_at(table2_network(2), f)) for f in (1e3, 1e1, 1e-1)]
        assert mags[0] < mags[1] < mags[2]
        assert mags[2] > 1e9

    def test_hand_computed_finite_rc(self):
        net = table2_network(2, rc=50e3)
        f = 13 * MHZ
        w = 2 * math.pi * f
        y = 1 / 50e3 + 1j * w * 80 * PF
        assert impedance_at(net, f) == pytest.approx(2.0 + 1j * w * 1.62 * UH + 1 / y, rel=1e-12)

    def test_bad_frequency(self):
        with pytest.raises(NonPositiveFrequency):
            impedance_at(table2_network(1), 0.0)

    @pytest.mark.parametrize("which", [1, 2])
    def test_single_sign_change_dense_scan(self, which):
        net = table2_network(which)
        f_r = resonance_frequency(net.antenna_ls, net.equivalent_capacitance())
        freqs = np.linspace(f_r * 1e-3, 10 * f_r, 200_001)
        im = np.array([impedance_at(net, f).imag for f in freqs[::50]])
        changes = np.count_nonzero(np.diff(np.sign(im)) != 0)
        assert changes == 1


class TestSweep:
    def test_two_points(self):
        pts = sweep(table2_network(1), 1 * MHZ, 30 * MHZ, 2)
        assert [p.frequency for p in pts] == [1 * MHZ, 30 * MHZ]

    def test_points_match_impedance_at(self):
        net = table2_network(2, rc=50e3)
        for p in sweep(net, 1 * MHZ, 30 * MHZ, 37):
            assert p.impedance == pytest.approx(impedance_at(net, p.frequency), rel=1e-14)

    def test_log_spacing(self):
        f = np.array([p.frequency for p in sweep(table2_network(1), 1e6, 1e8, 5)])
        assert f == pytest.approx([1e6, 10 ** 6.5, 1e7, 10 ** 7.5, 1e8], rel=1e-12)

    @pytest.mark.parametrize("args", [(0, 1e6, 10), (2e6, 1e6, 10), (1e6, 2e6, 1)])
    def test_bad_range(self, args):
        with pytest.raises(BadRange):
            sweep(table2_network(1), *args)

    def test_antenna2_brackets_table_value(self):
        pts = sweep(table2_network(2), 1 * MHZ, 30 * MHZ, 1001)
        im = [p.impedance.imag for p in pts]
        idx = next(i for i in range(len(im) - 1) if (im[i] < 0) != (im[i + 1] < 0))
        assert pts[idx].frequency <= 13.98 * MHZ * 1.0005
        assert pts[idx + 1].frequency >= 13.98 * MHZ * 0.9995


class TestFindResonance:
    def test_within_one_cell(self):
        net = table2_network(1)
        pts = sweep(net, 1 * MHZ, 30 * MHZ, 1001)
        cell = pts[1].frequency / pts[0].frequency - 1
        f_r = resonance_frequency(net.antenna_ls, net.equivalent_capacitance())
        assert find_resonance(pts) == pytest.approx(f_r, rel=cell)
        assert find_resonance(pts) == pytest.approx(14.06 * MHZ, rel=5e-4)

    def test_refinement_converges(self):
        net = table2_network(1)
        f_r = resonance_frequency(net.antenna_ls, net.equivalent_capacitance())
        coarse = abs(find_resonance(sweep(net, 1 * MHZ, 30 * MHZ, 51)) - f_r)
        fine = abs(find_resonance(sweep(net, 1 * MHZ, 30 * MHZ, 501)) - f_r)
        assert fine * 10 <= coarse

    def test_pure_resistor(self):
        pts = [ImpedancePoint(f, complex(50.0, 0.0)) for f in (1e6, 2e6, 3e6)]
        with pytest.raises(NoResonanceInRange):
            find_resonance(pts)


    def test_exact_zero_sample(self):
        im = [-2.0, 0.0, 0.0, 3.0]
        pts = [ImpedancePoint(f, complex(1.0, x)) for f, x in zip((1.0, 2.0, 3.0, 4.0), im)]
        assert find_resonance(pts) == 2.0

    def test_touching_zero_is_not_a_crossing(self):
        im = [-2.0, 0.0, -1.0, 4.0]
        pts = [ImpedancePoint(f, complex(1.0, x)) for f, x in zip((1.0, 2.0, 3.0, 4.0), im)]
        assert find_resonance(pts) == pytest.approx(3.2)


class TestQ:
    def test_antenna1(self):
        net = TagNetwork(4.85 * UH, 10.0, ChipModel(),
                         synthesize_tuning(4.85 * UH, ChipModel(), 13.56 * MHZ))
        assert q_factor(net) == pytest.approx(41.3, abs=0.05)

    def test_antenna2(self):
        net = TagNetwork(1.62 * UH, 2.0, ChipModel(),
                         synthesize_tuning(1.62 * UH, ChipModel(), 13.56 * MHZ))
        assert q_factor(net) == pytest.approx(69.0, abs=0.05)

    def test_doubling_rs_halves_q(self):
        assert q_factor(table2_network(1, rs=20.0)) == pytest.approx(q_factor(table2_network(1)) / 2)

    def test_zero_resistance(self):
        with pytest.raises(ZeroResistance):
            q_factor(table2_network(1, rs=0.0))
