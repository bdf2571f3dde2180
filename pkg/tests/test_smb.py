import json
import math

import numpy as np
import pytest

from entrospec import (
    AutoRegressive,
    GaussianProcessModel,
    PoissonKernel,
    RateNotFinite,
    SeparableFieldModel,
    White,
)
from entrospec.sampling import Trajectory, sample_field, sample_path, transform_path
from entrospec.smb import (
    expected_log_derivative,
    information_field,
    information_path,
    innovation_average,
    smb2d_experiment,
    smb_experiment,
)


class TestInformationPath:
    def test_matches_exact_block_density(self, zoo):
        # two routes to I_n: incremental innovations vs direct -log rho_n
        for model in zoo.values():
            traj = sample_path(model, 64, 5)
            path = information_path(model, traj)
            for n in (1, 2, 17, 64):
                direct = -model.log_block_density(traj.values[:n])
                assert abs(path[n - 1] - direct) <= 1e-8

    def test_deterministic_zero_path(self):
        model = GaussianProcessModel(PoissonKernel(0.5))
        traj = Trajectory(values=np.zeros(16), model_id="zero", seed=0)
        path = information_path(model, traj)
        fact = model.factorization(16)
        want = 0.5 * np.cumsum(np.log(2 * np.pi * fact.sigma2[:16]))
        assert np.allclose(path, want, atol=1e-12)

    def test_transformed_path_adds_jacobian(self):
        model = GaussianProcessModel(PoissonKernel(0.5))
        traj = sample_path(model, 32, 9)
        out = transform_path(traj, lambda x: x + 0.1 * np.sin(x), lambda x: 1 + 0.1 * np.cos(x))
        base = information_path(model, traj)
        trans = information_path(model, out)
        assert np.allclose(trans - base, np.cumsum(out.log_jacobian_terms), atol=1e-12)

    def test_innovation_average_near_one(self):
        model = GaussianProcessModel(AutoRegressive([0.5], 0.75))
        traj = sample_path(model, 10000, 17)
        assert innovation_average(model, traj) == pytest.approx(1.0, abs=0.06)

    def test_innovation_average_zero_path(self):
        model = GaussianProcessModel(PoissonKernel(0.5))
        traj = Trajectory(values=np.zeros(64), model_id="zero", seed=0)
        assert innovation_average(model, traj) == 0.0


class TestExpectedLogDerivative:
    def test_constant_derivative(self):
        assert expected_log_derivative(lambda x: 3.0 * np.ones_like(x), 1.0) == pytest.approx(
            math.log(3.0), abs=1e-12
        )

    def test_frozen_oracle_value(self):
        # E[log(1 + 0.1 cos X)], X ~ N(0,1): quadrature oracle frozen once
        got = expected_log_derivative(lambda x: 1 + 0.1 * np.cos(x), 1.0)
        assert got == pytest.approx(0.05795692528396653, abs=1e-10)

    def test_monte_carlo_cross_check(self):
        from entrospec.sampling import standard_normals, stream_seed

        z = standard_normals(stream_seed(31, 0), 400000)
        mc = float(np.mean(np.log(1 + 0.1 * np.cos(z))))
        exact = expected_log_derivative(lambda x: 1 + 0.1 * np.cos(x), 1.0)
        assert mc == pytest.approx(exact, abs=5e-4)


class TestSmbExperiment:
    def test_unbiased_and_concentrating(self):
        model = GaussianProcessModel(AutoRegressive([0.5], 0.75))
        rep = smb_experiment(model, [64, 256, 1024], 200, base_seed=20240817)
        assert rep.all_passed
        # variance law: sd within [0.5, 2] x 1/sqrt(2n)
        assert np.all(rep.sds >= 0.5 * rep.theoretical_sd)
        assert np.all(rep.sds <= 2.0 * rep.theoretical_sd)
        assert np.all(np.diff(rep.sds) < 0.0)

    def test_white_model_exact_rate(self):
        model = GaussianProcessModel(White(1.0))
        rep = smb_experiment(model, [16, 64], 100, base_seed=3)
        assert rep.se_exact == pytest.approx(model.entropy_rate(), abs=1e-14)
        assert np.allclose(rep.hn_over_n, rep.se_exact, atol=1e-12)
        assert rep.all_passed

    def test_deterministic_given_seed(self):
        model = GaussianProcessModel(PoissonKernel(0.5))
        a = smb_experiment(model, [32], 64, base_seed=11)
        b = smb_experiment(model, [32], 64, base_seed=11)
        assert np.array_equal(a.means, b.means)
        assert np.array_equal(a.sds, b.sds)

    def test_worker_count_does_not_change_results(self):
        model = GaussianProcessModel(PoissonKernel(0.5))
        one = smb_experiment(model, [64], 96, base_seed=4, workers=1)
        four = smb_experiment(model, [64], 96, base_seed=4, workers=4)
        assert np.array_equal(one.means, four.means)
        assert np.array_equal(one.sds, four.sds)

    def test_transformed_experiment(self):
        model = GaussianProcessModel(AutoRegressive([0.5], 0.75))
        phi = lambda x: x + 0.1 * np.sin(x)
        dphi = lambda x: 1 + 0.1 * np.cos(x)
        rep = smb_experiment(model, [256, 1024], 150, base_seed=8, transform=(phi, dphi))
        shift = expected_log_derivative(dphi, model.r0)
        assert rep.se_exact == pytest.approx(model.entropy_rate() + shift, abs=1e-10)
        assert rep.all_passed

    def test_degenerate_rate_raises(self):
        import entrospec

        n = np.arange(1, 513)
        coeffs = np.concatenate(
            ([1.0], -(4.0 / 3.0) * np.sin(n * math.pi / 4) / (math.pi * n))
        )
        model = GaussianProcessModel(
            entrospec.FourierTable(entrospec.AutocovarianceSequence(coeffs))
        )
        with pytest.raises(RateNotFinite):
            smb_experiment(model, [16], 8, base_seed=0)

    def test_report_serialization(self):
        model = GaussianProcessModel(PoissonKernel(0.5))
        rep = smb_experiment(model, [16, 32], 64, base_seed=2)
        data = json.loads(rep.to_json())
        assert data["dims"] == 1
        assert data["n_grid"] == [16, 32]
        assert data["all_passed"] == rep.all_passed
        lines = rep.to_csv().splitlines()
        assert lines[0] == "n,mean,sd,se_exact,hn_over_n,theoretical_sd,pass"
        assert len(lines) == 3
        assert float(lines[1].split(",")[1]) == rep.means[0]


class TestSmb2d:
    def test_information_field_matches_density(self):
        fm = SeparableFieldModel(PoissonKernel(0.5), PoissonKernel(0.5))
        s = sample_field(fm, 8, 3)
        got = information_field(fm, s)
        want = -fm.log_block_density_2d(s.values) / 64
        assert got == pytest.approx(want, abs=1e-12)

    def test_unbiased_and_concentrating(self):
        fm = SeparableFieldModel(PoissonKernel(0.5), PoissonKernel(0.5))
        rep = smb2d_experiment(fm, [16, 32, 64], 50, base_seed=20240817)
        assert rep.all_passed
        mad = rep.mean_abs_deviation(rep.values_by_n)
        assert np.all(np.diff(mad) < 0.0)

    def test_worker_count_does_not_change_results(self):
        fm = SeparableFieldModel(PoissonKernel(0.5), White(1.0))
        one = smb2d_experiment(fm, [16], 40, base_seed=9, workers=1)
        three = smb2d_experiment(fm, [16], 40, base_seed=9, workers=3)
        assert np.array_equal(one.means, three.means)

    def test_white_field_rate(self):
        fm = SeparableFieldModel(White(1.0), White(1.0))
        rep = smb2d_experiment(fm, [8, 16], 40, base_seed=1)
        assert rep.se_exact == pytest.approx(0.5 * math.log(2 * math.pi * math.e), abs=1e-12)
        assert rep.all_passed
