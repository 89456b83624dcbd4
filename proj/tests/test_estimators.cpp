#include "doctest.h"
#include "oracles.hpp"
#include "riscfo/analysis.hpp"
#include "riscfo/channel_model.hpp"
#include "riscfo/estimators.hpp"
#include "riscfo/numerics.hpp"

using namespace riscfo;

namespace {

struct Scenario {
    FrameGeometry geom;
    ChannelSet channel;
    ReflectionPattern pattern;
    PilotFrame frame;
    ReceivedFrame rx;
};

Scenario periodic(Index n, Index l, Index cp, Index m, Index nz, double eps, double sigma2,
                  RandomStream& rng) {
    FrameGeometry geom(n, l, cp, m, nz);
    ChannelSet channel = sample_cir(exponential_pdp(l, 1.0 / 3.0), m, n, rng);
    ReflectionPattern pattern = dft_pattern(m);
    PilotFrame frame = build_periodic_pilots(geom, zadoff_chu(l, 1), rng);
    ReceivedFrame rx = transmit_frame(frame, channel, pattern, eps, sigma2, rng);
    return {geom, channel, pattern, frame, rx};
}

Scenario baseline(Index n, Index l, Index cp, Index m, double eps, double sigma2,
                  RandomStream& rng, Index pilots = 0) {
    FrameGeometry geom(n, l, cp, m, 2);
    ChannelSet channel = sample_cir(exponential_pdp(l, 1.0 / 3.0), m, n, rng);
    ReflectionPattern pattern = dft_pattern(m);
    PilotFrame frame = build_baseline_pilots(geom, rng, pilots);
    ReceivedFrame rx = transmit_frame(frame, channel, pattern, eps, sigma2, rng);
    return {geom, channel, pattern, frame, rx};
}

/// Dense F_{N,L}: the first L columns of F_N.
ComplexMat partial_dft(Index n, Index l) { return oracle::dft_matrix(n).leftCols(l); }

}  // namespace

TEST_CASE("baseline block estimate is exact without noise or CFO") {
    RandomStream rng(51);
    Scenario s = baseline(64, 8, 10, 3, 0.0, 0.0, rng);
    for (Index k = 0; k < s.geom.blocks(); ++k) {
        const ComplexVec truth = aggregate_cfr(s.channel.cfr(), s.pattern.column(k));
        const ComplexVec est =
            baseline_cfr_block(s.rx.observed.freq.col(k), s.frame.block(k).symbols, 8);
        CHECK((est - truth).norm() < 1e-10 * truth.norm());
    }
    CHECK(baseline_cfr_block(ComplexVec(ComplexVec::Zero(64)), s.frame.block(0).symbols, 8)
              .norm() == 0.0);
}

TEST_CASE("baseline block estimate under CFO matches the dense projection") {
    // y / s carries the CFO-distorted response; the estimator keeps its first L taps.
    RandomStream rng(52);
    const Index n = 64, l = 8;
    const double eps = 0.01;
    Scenario s = baseline(n, l, 10, 2, eps, 0.0, rng);
    const ComplexMat fl = partial_dft(n, l);
    const ComplexMat lam = build_lambda(eps, n);
    for (Index k = 0; k < s.geom.blocks(); ++k) {
        const ComplexVec& sym = s.frame.block(k).symbols;
        const Complex ramp = std::polar(
            1.0, 2 * oracle::kPi * eps * double(s.geom.block_length() * k) / double(n));
        const ComplexVec h_k = ramp * (sym.cwiseInverse().asDiagonal() * lam * sym.asDiagonal() *
                                       aggregate_cfr(s.channel.cfr(), s.pattern.column(k)));
        const ComplexVec expected = fl * (fl.adjoint() * h_k);
        const ComplexVec est = baseline_cfr_block(s.rx.observed.freq.col(k), sym, l);
        CHECK((est - expected).norm() < 1e-9 * expected.norm());
    }
}

TEST_CASE("baseline estimate with a pilot comb") {
    RandomStream rng(53);
    Scenario s = baseline(64, 8, 10, 3, 0.0, 0.0, rng, 16);
    const CfrEstimate est = baseline_cfr_full(s.rx.observed, s.frame, s.pattern, 8);
    CHECK(nmse_freq(s.channel.cfr(), est.cfr) < 1e-18);

    // Noisy comb: the dense least-squares fit on the comb rows is the oracle.
    Scenario noisy = baseline(64, 8, 10, 0, 0.0, 0.5, rng, 16);
    const ComplexMat fl = partial_dft(64, 8);
    ComplexMat rows(16, 8);
    ComplexVec rhs(16);
    const ComplexVec& sym = noisy.frame.block(0).symbols;
    for (Index i = 0; i < 16; ++i) {
        rows.row(i) = std::sqrt(64.0) * sym(4 * i) * fl.row(4 * i);
        rhs(i) = noisy.rx.observed.freq(4 * i, 0);
    }
    const ComplexVec g_ls = rows.colPivHouseholderQr().solve(rhs);
    const ComplexVec est_block = baseline_cfr_block(noisy.rx.observed.freq.col(0), sym, 8,
                                                    noisy.frame.pilot_subcarriers());
    CHECK((est_block - fl * g_ls).norm() < 1e-9 * est_block.norm());

    std::vector<Index> uneven{0, 3, 8, 12, 16, 20, 24, 28};
    CHECK_THROWS_AS(baseline_cfr_block(noisy.rx.observed.freq.col(0), sym, 8, uneven),
                    ParameterError);
}

TEST_CASE("baseline estimate rejects a zero pilot") {
    ComplexVec s = ComplexVec::Ones(16);
    s(5) = 0;
    try {
        baseline_cfr_block(ComplexVec(ComplexVec::Ones(16)), s, 4);
        FAIL("expected ZeroPilotError");
    } catch (const ZeroPilotError& e) {
        CHECK(e.subcarrier() == 5);
    }
}

TEST_CASE("baseline full estimate is exact without noise or CFO") {
    RandomStream rng(54);
    for (Index m : {0, 1, 7}) {
        Scenario s = baseline(64, 8, 10, m, 0.0, 0.0, rng);
        const CfrEstimate est = baseline_cfr_full(s.rx.observed, s.frame, s.pattern, 8);
        CHECK(est.scaled_unitary_pattern);
        CHECK(nmse_freq(s.channel.cfr(), est.cfr) < 1e-18);
    }
}

TEST_CASE("baseline NMSE at zero CFO is the noise term") {
    RandomStream rng(55);
    const double sigma2 = 0.1;
    const Index m = 3;
    double err = 0, ref = 0;
    for (int t = 0; t < 5000; ++t) {
        Scenario s = baseline(64, 8, 10, m, 0.0, sigma2, rng);
        const ErrorEnergy e = error_energy(
            s.channel.cfr(), baseline_cfr_full(s.rx.observed, s.frame, s.pattern, 8).cfr);
        err += e.error;
        ref += e.reference;
    }
    const double expected = sigma2 * 8.0 / (64.0 * double(m + 1));
    CHECK(std::abs(err / ref / expected - 1.0) < 0.05);
}

TEST_CASE("baseline NMSE under CFO at M = 100 is about 1.76") {
    RandomStream rng(56);
    double err = 0, ref = 0;
    for (int t = 0; t < 100; ++t) {
        Scenario s = baseline(64, 8, 10, 100, 0.01, 0.0, rng);
        const ErrorEnergy e = error_energy(
            s.channel.cfr(), baseline_cfr_full(s.rx.observed, s.frame, s.pattern, 8).cfr);
        err += e.error;
        ref += e.reference;
    }
    CHECK(std::abs(err / ref / 1.762218162373338 - 1.0) < 0.05);
}

TEST_CASE("noiseless CFO estimate is exact") {
    RandomStream rng(57);
    for (int t = 0; t < 50; ++t) {
        const double eps = 0.5 - rng.uniform();
        Scenario s = periodic(64, 8, 8, 3, 4, eps, 0.0, rng);
        const CfoEstimate est = cfo_estimate(s.rx.observed, s.geom);
        CHECK(std::abs(est.epsilon - eps) < 1e-9);
        CHECK(est.sample_count == (2 * 8 + 1) * 4);
        // The averaged correlation is a positive real times e^{-j 2 pi eps L / N}.
        const double phase = std::arg(est.correlation) + 2 * oracle::kPi * eps * 8.0 / 64.0;
        CHECK(std::abs(std::remainder(phase, 2 * oracle::kPi)) < 1e-9);
    }
    Scenario zero = periodic(64, 8, 8, 2, 3, 0.0, 0.0, rng);
    CHECK(std::abs(cfo_estimate(zero.rx.observed, zero.geom).epsilon) < 1e-15);
}

TEST_CASE("CFO estimate stays in range and uses the stated correlation window") {
    RandomStream rng(58);
    Scenario s = periodic(64, 8, 8, 2, 4, 0.3, 10.0, rng);
    const CfoEstimate est = cfo_estimate(s.rx.observed, s.geom);
    CHECK(std::abs(est.epsilon) <= 64.0 / 16.0);

    Complex sum = 0;
    for (Index k = 0; k < 3; ++k)
        for (Index t = 7; t <= 23; ++t)
            sum += s.rx.observed.time(t, k) * std::conj(s.rx.observed.time(t + 8, k));
    CHECK(std::abs(est.correlation - sum / 51.0) < 1e-12 * std::abs(sum));
    CHECK(std::abs(est.epsilon + 64.0 * std::arg(sum) / (2 * oracle::kPi * 8.0)) < 1e-12);

    Observation silent = s.rx.observed;
    silent.time.setZero();
    CHECK_THROWS_AS(cfo_estimate(silent, s.geom), EstimationError);
}

TEST_CASE("CFO compensation") {
    RandomStream rng(59);
    Scenario s = periodic(64, 8, 10, 2, 4, 0.23, 0.0, rng);
    const Observation& obs = s.rx.observed;
    CHECK((cfo_compensate(obs, 0.0, 74).time - obs.time).norm() == 0.0);

    const Observation exact = cfo_compensate(obs, 0.23, s.geom.block_length());
    for (Index k = 0; k < s.geom.blocks(); ++k) {
        const ComplexVec conv = oracle::circular_convolution(
            s.frame.block(k).samples, aggregate_cir(s.channel.cir(), s.pattern.column(k)));
        CHECK((exact.time.col(k) - conv).norm() < 1e-12 * conv.norm());
    }
    const Observation twice = cfo_compensate(cfo_compensate(obs, 0.1, 74), -0.07, 74);
    CHECK((twice.time - cfo_compensate(obs, 0.03, 74).time).norm() < 1e-12 * obs.time.norm());
    CHECK((exact.freq - freq_rx(exact)).norm() < 1e-12 * exact.freq.norm());
}

TEST_CASE("CIR block estimate") {
    RandomStream rng(60);
    Scenario s = periodic(64, 8, 8, 2, 4, 0.11, 0.0, rng);
    const Observation comp = cfo_compensate(s.rx.observed, 0.11, s.geom.block_length());
    const ComplexVec z = zadoff_chu(8, 1);
    for (Index k = 0; k < s.geom.blocks(); ++k) {
        const ComplexVec truth = aggregate_cir(s.channel.cir(), s.pattern.column(k));
        CHECK((cir_estimate_block(comp.time.col(k), z, s.geom) - truth).norm() <
              1e-10 * truth.norm());
    }
    CHECK(cir_estimate_block(ComplexVec(ComplexVec::Zero(64)), z, s.geom).norm() == 0.0);
}

TEST_CASE("CIR block estimate matches the stacked least-squares oracle") {
    RandomStream rng(61);
    const FrameGeometry geom(16, 4, 4, 0, 3);
    const ComplexVec z = zadoff_chu(4, 1);
    const ComplexMat zc = oracle::dense_circulant(z);
    for (int t = 0; t < 10; ++t) {
        const ComplexVec r = oracle::random_vector(16, rng);
        ComplexMat a(8, 4);
        a << zc, zc;
        ComplexVec b(8);
        b << r.segment(4, 4), r.segment(8, 4);
        const ComplexVec ls = a.colPivHouseholderQr().solve(b);
        CHECK((cir_estimate_block(r, z, geom) - ls).norm() < 1e-9 * ls.norm());
    }
}

TEST_CASE("CIR full estimate") {
    RandomStream rng(62);
    Scenario s = periodic(256, 32, 34, 4, 4, -0.37, 0.0, rng);
    const Observation comp = cfo_compensate(s.rx.observed, -0.37, s.geom.block_length());
    const CirEstimate known = cir_estimate_full(comp, s.frame, s.pattern, s.geom);
    CHECK(nmse_time(s.channel.cir(), known.cir) < 1e-18);

    const CfoEstimate cfo = cfo_estimate(s.rx.observed, s.geom);
    const Observation comp_hat = cfo_compensate(s.rx.observed, cfo.epsilon, s.geom.block_length());
    const CirEstimate est = cir_estimate_full(comp_hat, s.frame, s.pattern, s.geom);
    CHECK(nmse_time(s.channel.cir(), est.cir) < 1e-12);
    CHECK(nmse_freq(s.channel.cfr(), est.cfr(256)) < 1e-12);

    RandomStream rng2(63);
    Scenario b = baseline(64, 8, 8, 1, 0.0, 0.0, rng2);
    CHECK_THROWS_AS(cir_estimate_full(b.rx.observed, b.frame, b.pattern, b.geom),
                    std::invalid_argument);
}

TEST_CASE("CIR error energy with a known CFO is sigma2 / (N_z - 1)") {
    // Averaging N_z - 1 subsequences and inverting a ZC circulant (Z^H Z = L I)
    // leaves sigma2 / (N_z - 1) per block; the scaled-unitary pattern keeps it.
    RandomStream rng(64);
    const double sigma2 = 0.2;
    for (Index nz : {2, 4}) {
        double err = 0;
        const int trials = 2000;
        for (int t = 0; t < trials; ++t) {
            Scenario s = periodic(64, 8, 8, 3, nz, 0.2, sigma2, rng);
            const Observation comp = cfo_compensate(s.rx.observed, 0.2, s.geom.block_length());
            err += error_energy(s.channel.cir(),
                                cir_estimate_full(comp, s.frame, s.pattern, s.geom).cir)
                       .error;
        }
        CHECK(std::abs(err / trials / (sigma2 / double(nz - 1)) - 1.0) < 0.05);
    }
}

TEST_CASE("joint estimate is exact without noise") {
    RandomStream rng(65);
    for (int t = 0; t < 20; ++t) {
        const double eps = 0.5 - rng.uniform();
        Scenario s = periodic(256, 32, 34, 4, 4, eps, 0.0, rng);
        const JointEstimate est = joint_estimate(s.rx.observed, s.frame, s.pattern, s.geom);
        CHECK(std::abs(est.cfo.epsilon - eps) < 1e-9);
        CHECK(nmse_freq(s.channel.cfr(), est.cir.cfr(256)) < 1e-12);
    }
}

TEST_CASE("joint estimate agrees with the staged pipeline") {
    RandomStream rng(66);
    Scenario s = periodic(128, 16, 16, 5, 3, 0.31, 0.05, rng);
    const JointEstimate joint = joint_estimate(s.rx.observed, s.frame, s.pattern, s.geom);
    const CfoEstimate cfo = cfo_estimate(s.rx.observed, s.geom);
    const CirEstimate staged = cir_estimate_full(
        cfo_compensate(s.rx.observed, cfo.epsilon, s.geom.block_length()), s.frame, s.pattern,
        s.geom);
    CHECK(joint.cfo.epsilon == cfo.epsilon);
    CHECK((joint.cir.cir - staged.cir).norm() < 1e-12 * staged.cir.norm());
}

TEST_CASE("joint estimate never reads past the training window") {
    RandomStream rng(67);
    Scenario s = periodic(256, 32, 34, 4, 4, 0.2, 0.1, rng);
    const JointEstimate clean = joint_estimate(s.rx.observed, s.frame, s.pattern, s.geom);
    Observation corrupted = s.rx.observed;
    corrupted.time.bottomRows(256 - 128).setConstant(Complex(1e6, -3e5));
    corrupted.freq.setConstant(Complex(std::nan(""), 0));
    const JointEstimate again = joint_estimate(corrupted, s.frame, s.pattern, s.geom);
    CHECK(again.cfo.epsilon == clean.cfo.epsilon);
    CHECK(again.cir.cir == clean.cir.cir);
}

TEST_CASE("joint estimate is deterministic") {
    RandomStream a(68), b(68);
    Scenario sa = periodic(64, 8, 8, 3, 4, 0.1, 0.1, a);
    Scenario sb = periodic(64, 8, 8, 3, 4, 0.1, 0.1, b);
    const JointEstimate ea = joint_estimate(sa.rx.observed, sa.frame, sa.pattern, sa.geom);
    const JointEstimate eb = joint_estimate(sb.rx.observed, sb.frame, sb.pattern, sb.geom);
    CHECK(ea.cfo.epsilon == eb.cfo.epsilon);
    CHECK(ea.cir.cir == eb.cir.cir);
}

TEST_CASE("joint estimate operation counts") {
    RandomStream rng(69);
    Scenario s = periodic(256, 8, 16, 16, 16, 0.1, 0.0, rng);
    const OpCount ops = joint_estimate(s.rx.observed, s.frame, s.pattern, s.geom).ops;
    CHECK(ops.cfo_correlation == std::uint64_t((14 * 8 + 1) * 17));
    CHECK(ops.cfo_compensation == std::uint64_t(16 * 8 * 17));
    CHECK(ops.cir_solve == std::uint64_t(8 * 8 * 17));
    CHECK(ops.cir_combine == std::uint64_t(8 * 17 * 17));
    CHECK(ops.pattern_inverse == std::uint64_t(17 * 17));
    CHECK(ops.total() == ops.cfo_correlation + ops.cfo_compensation + ops.cir_solve +
                             ops.cir_combine + ops.pattern_inverse);

    // Doubling N_z doubles the CFO stage within [1.8, 2.2].
    RandomStream rng2(70);
    Scenario d = periodic(256, 8, 16, 16, 32, 0.1, 0.0, rng2);
    const OpCount ops2 = joint_estimate(d.rx.observed, d.frame, d.pattern, d.geom).ops;
    const double ratio = double(ops2.cfo_correlation + ops2.cfo_compensation) /
                         double(ops.cfo_correlation + ops.cfo_compensation);
    CHECK(ratio >= 1.8);
    CHECK(ratio <= 2.2);
}

TEST_CASE("CFO MSE falls as M doubles at 10 dB") {
    const double sigma2 = 0.1;
    std::vector<double> mse;
    for (Index m : {16, 32, 64}) {
        RandomStream rng(derive_seed(71, std::uint32_t(m), 0));
        double acc = 0;
        for (int t = 0; t < 5000; ++t) {
            const double eps = 0.5 - rng.uniform();
            Scenario s = periodic(64, 8, 8, m, 4, eps, sigma2, rng);
            acc += mse_cfo(eps, cfo_estimate(s.rx.observed, s.geom).epsilon);
        }
        mse.push_back(acc / 5000);
    }
    CHECK(mse[1] < mse[0]);
    CHECK(mse[2] < mse[1]);
}
