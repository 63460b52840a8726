// Algebra, representation, and kernel suites (no quadrature rules needed).

#include <cmath>
#include <numbers>

#include "suites_detail.hpp"

namespace gps::detail {

std::vector<ResultRow> suite_algebra(const ExperimentConfig& cfg) {
  const AlgebraSignature sig{cfg.p, cfg.q};
  Rng rng(cfg.seed * 1000003 + 1);
  std::vector<ResultRow> rows;

  double anti = 0.0;
  for (int i = 1; i <= sig.n(); ++i)
    for (int j = 1; j <= sig.n(); ++j) {
      Multivector s = Multivector::basis_vector(sig, i) * Multivector::basis_vector(sig, j);
      s += Multivector::basis_vector(sig, j) * Multivector::basis_vector(sig, i);
      if (i == j) s += Multivector::scalar(sig, 2.0);
      anti = std::max(anti, s.norm());
    }
  rows.push_back(row("algebra", "generators", 0, "anticommutation_sup", anti, 0.0));

  const int triples = sig.n() <= 6 ? 1000 : 100;
  double assoc = 0.0;
  for (int k = 0; k < triples; ++k) {
    const Multivector a = random_multivector(sig, rng);
    const Multivector b = random_multivector(sig, rng);
    const Multivector c = random_multivector(sig, rng);
    Multivector lhs = (a * b) * c;
    const Multivector rhs = a * (b * c);
    lhs -= rhs;
    assoc = std::max(assoc, lhs.norm() / std::max(rhs.norm(), 1e-30));
  }
  rows.push_back(row("algebra", "random_triples", 0, "associativity_rel", assoc, 1e-12));

  double conj_law = 0.0, rev_law = 0.0, norm_id = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const Multivector a = random_multivector(sig, rng);
    const Multivector b = random_multivector(sig, rng);
    Multivector lhs = (a * b).conjugate();
    const Multivector rhs = b.conjugate() * a.conjugate();
    lhs -= rhs;
    conj_law = std::max(conj_law, lhs.norm() / std::max(rhs.norm(), 1e-30));
    Multivector lr = (a * b).reverse();
    const Multivector rr = b.reverse() * a.reverse();
    lr -= rr;
    rev_law = std::max(rev_law, lr.norm() / std::max(rr.norm(), 1e-30));
    const double s0 = (a * a.conjugate()).scalar_part();
    double s1 = 0.0;
    for (std::size_t bb = 0; bb < sig.dim(); ++bb) s1 += a[bb] * a[bb];
    norm_id = std::max(norm_id, std::abs(s0 - s1) / std::max(s1, 1e-30));
  }
  rows.push_back(
      row("algebra", "random_pairs", 0, "conjugation_antiautomorphism_rel", conj_law, 1e-12));
  rows.push_back(
      row("algebra", "random_pairs", 0, "reversion_antiautomorphism_rel", rev_law, 1e-12));
  rows.push_back(row("algebra", "random_elements", 0, "norm_identity_rel", norm_id, 1e-12));

  double inv_err = 0.0;
  for (int k = 0; k < 100; ++k) {
    Multivector x(sig);
    x[0] = rng.normal();
    for (int i = 1; i <= sig.n(); ++i) x[1u << (i - 1)] = rng.normal();
    if (x.norm() < 1e-3) continue;
    Multivector prod = x * paravector_inverse(x);
    prod -= Multivector::scalar(sig, 1.0);
    inv_err = std::max(inv_err, prod.norm());
  }
  rows.push_back(row("algebra", "random_paravectors", 0, "inverse_identity", inv_err, 1e-12));

  double embed_leak = 0.0;
  for (int k = 0; k < 50; ++k) {
    std::vector<double> amb(sig.n() + 1);
    for (double& v : amb) v = rng.normal();
    const Multivector e = embed_point(SplitPoint::from_ambient(amb, sig), sig);
    for (std::size_t b = 0; b < sig.dim(); ++b)
      if (blade_grade(static_cast<unsigned>(b)) > 1)
        embed_leak = std::max(embed_leak, std::abs(e[b]));
  }
  rows.push_back(row("algebra", "embedded_points", 0, "grade_leak_sup", embed_leak, 0.0));
  return rows;
}

std::vector<ResultRow> suite_representation(const ExperimentConfig& cfg) {
  const AlgebraSignature sig{cfg.p, cfg.q};
  Rng rng(cfg.seed * 1000003 + 2);
  std::vector<ResultRow> rows;

  auto sample_point = [&] {
    std::vector<double> xp(sig.p + 1);
    for (double& v : xp) v = rng.uniform(-1.0, 1.0);
    return SplitPoint::from_polar(std::move(xp), rng.uniform(0.5, 3.0),
                                  random_unit_q(sig, rng));
  };

  for (const CatalogueEntry& entry : full_catalogue(sig)) {
    double worst = 0.0, worst_eval = 0.0;
    for (int k = 0; k < 200; ++k) {
      SplitPoint x = sample_point();
      if (entry.name == "kernel_section") {
        // keep samples away from the pole circularization
        const double d0 = x.xp[0] - 0.4;
        const double d1 = sig.p >= 1 ? x.xp[1] + 0.3 : 0.0;
        if (std::sqrt(d0 * d0 + d1 * d1 + (x.r - 3.9) * (x.r - 3.9)) < 0.5) {
          --k;
          continue;
        }
      }
      worst = std::max(worst, representation_residual(entry.f, x, random_unit_q(sig, rng)));

      auto w1 = random_unit_q(sig, rng);
      auto w2 = random_unit_q(sig, rng);
      double sep = 0.0;
      for (int j = 0; j < sig.q; ++j) sep += (w1[j] - w2[j]) * (w1[j] - w2[j]);
      if (std::sqrt(sep) < 0.1)
        for (double& v : w2) v = -v;
      Multivector diff = representation_eval(entry.f, x, w1, w2);
      diff -= entry.f(x);
      worst_eval = std::max(worst_eval, diff.norm());
    }
    rows.push_back(row("representation", entry.name, 0, "two_point_residual_sup", worst, 1e-12));
    rows.push_back(
        row("representation", entry.name, 0, "general_pair_residual_sup", worst_eval, 1e-12));
  }

  // a full coordinate product is not a slice function
  const SliceFunction bad = SliceFunction::raw(sig, [sig](const SplitPoint& y) {
    return Multivector::scalar(sig, y.xp[sig.p >= 1 ? 1 : 0] * y.xq[0]);
  });
  double neg = 0.0;
  for (int k = 0; k < 20; ++k)
    neg = std::max(neg, representation_residual(bad, sample_point(), random_unit_q(sig, rng)));
  rows.push_back(row_min("representation", "non_slice_control", 0, "residual_inf", neg, 1e-3));

  // continuity towards r = 0 for a smooth stem
  const SliceFunction lin = make_linear_paravector(sig, Multivector::scalar(sig, 1.0));
  double near0 = 0.0;
  for (int k = 0; k < 20; ++k) {
    std::vector<double> xp(sig.p + 1);
    for (double& v : xp) v = rng.uniform(-1.0, 1.0);
    const SplitPoint x = SplitPoint::from_polar(std::move(xp), 1e-4, random_unit_q(sig, rng));
    near0 = std::max(near0, representation_residual(lin, x, random_unit_q(sig, rng)));
  }
  rows.push_back(row("representation", "linear_paravector", 0, "residual_near_axis", near0, 1e-8));
  return rows;
}

std::vector<ResultRow> suite_kernel(const ExperimentConfig& cfg) {
  const AlgebraSignature sig{cfg.p, cfg.q};
  Rng rng(cfg.seed * 1000003 + 3);
  std::vector<ResultRow> rows;

  double apb = 0.0, collapse = 0.0, grade_leak = 0.0, anti_collapse = 0.0;
  for (int k = 0; k < 100; ++k) {
    const auto eta = random_unit_q(sig, rng);
    const auto omg = random_unit_q(sig, rng);
    const auto [alpha, beta] = representation_coefficients(sig, eta, omg);
    Multivector s = alpha;
    s += beta;
    s -= Multivector::scalar(sig, 1.0);
    apb = std::max(apb, s.norm());
    for (std::size_t b = 0; b < sig.dim(); ++b) {
      const int g = blade_grade(static_cast<unsigned>(b));
      if (g != 0 && g != 2)
        grade_leak = std::max(grade_leak, std::max(std::abs(alpha[b]), std::abs(beta[b])));
    }
    const auto [a_same, b_same] = representation_coefficients(sig, eta, eta);
    Multivector da = a_same;
    da -= Multivector::scalar(sig, 1.0);
    collapse = std::max(collapse, std::max(da.norm(), b_same.norm()));
    auto meta = eta;
    for (double& v : meta) v = -v;
    const auto [a_opp, b_opp] = representation_coefficients(sig, eta, meta);
    Multivector db = b_opp;
    db -= Multivector::scalar(sig, 1.0);
    anti_collapse = std::max(anti_collapse, std::max(a_opp.norm(), db.norm()));
  }
  rows.push_back(row("kernel", "coefficients", 0, "alpha_plus_beta_minus_one", apb, 1e-15));
  rows.push_back(row("kernel", "coefficients", 0, "grade_leak_sup", grade_leak, 1e-15));
  rows.push_back(row("kernel", "coefficients", 0, "same_direction_collapse", collapse, 1e-14));
  rows.push_back(
      row("kernel", "coefficients", 0, "opposite_direction_collapse", anti_collapse, 1e-14));

  rows.push_back(row("kernel", "surface_constants", 0, "sigma1_vs_2pi",
                     std::abs(sphere_area(1) - 2.0 * std::numbers::pi), 1e-12));
  rows.push_back(row("kernel", "surface_constants", 0, "sigma2_vs_4pi",
                     std::abs(sphere_area(2) - 4.0 * std::numbers::pi), 1e-12));

  if (sig.p == 1) {
    std::vector<double> om(sig.q, 0.0);
    om[0] = 1.0;
    std::vector<double> d(3, 0.0);
    d[0] = 1.0;
    Multivector e0 = cauchy_kernel_E(sig, d, om);
    e0 -= Multivector::scalar(sig, 1.0 / (4.0 * std::numbers::pi));
    rows.push_back(row("kernel", "axis_values", 0, "unit_scalar_offset", e0.norm(), 1e-14));
    d[0] = 0.0;
    d[2] = 1.0;
    Multivector eo = cauchy_kernel_E(sig, d, om);
    eo += embed_direction(om, sig) / (4.0 * std::numbers::pi);
    rows.push_back(row("kernel", "axis_values", 0, "unit_omega_offset", eo.norm(), 1e-14));
  }

  double emag = 0.0;
  {
    std::vector<double> om(sig.q, 0.0);
    om[sig.q - 1] = 1.0;
    for (int k = 0; k < 50; ++k) {
      std::vector<double> d(sig.p + 2);
      double n2 = 0.0;
      for (double& v : d) {
        v = rng.normal();
        n2 += v * v;
      }
      if (n2 < 1e-3) continue;
      const double want =
          1.0 / (sphere_area(sig.p + 1) * std::pow(std::sqrt(n2), sig.p + 1));
      emag = std::max(emag, std::abs(cauchy_kernel_E(sig, d, om).norm() - want) / want);
    }
  }
  rows.push_back(row("kernel", "magnitude", 0, "conjugate_norm_rel", emag, 1e-12));

  const SplitPoint y_star = [&] {
    std::vector<double> xp(sig.p + 1, 0.0);
    xp[0] = 0.4;
    if (sig.p >= 1) xp[1] = -0.3;
    return SplitPoint::from_polar(std::move(xp), 3.9, random_unit_q(sig, rng));
  }();
  const SliceFunction section = make_kernel_section(sig, y_star);
  const SliceFunction plain = SliceFunction::raw(sig, [sig, y_star](const SplitPoint& z) {
    return gps_cauchy_kernel(sig, y_star, z);
  });

  double mono = 0.0;
  for (int k = 0; k < 50; ++k) {
    std::vector<double> xp(sig.p + 1);
    for (double& v : xp) v = rng.uniform(-1.0, 1.0);
    const SplitPoint x = SplitPoint::from_polar(std::move(xp), rng.uniform(0.8, 2.6),
                                                random_unit_q(sig, rng));
    const double d0 = x.xp[0] - y_star.xp[0];
    const double d1 = sig.p >= 1 ? x.xp[1] - y_star.xp[1] : 0.0;
    if (std::sqrt(d0 * d0 + d1 * d1 + (x.r - y_star.r) * (x.r - y_star.r)) < 0.8) {
      --k;
      continue;
    }
    const Multivector res = apply_vartheta(plain, x, 1e-4);
    mono = std::max(mono, res.norm() / std::max(plain(x).norm(), 1e-30));
  }
  rows.push_back(row("kernel", "kernel_section", 0, "vartheta_residual_rel", mono, 1e-6));

  // the slice kernel equals the two-point reconstruction of its restriction
  double swap = 0.0;
  for (int k = 0; k < 50; ++k) {
    std::vector<double> xp(sig.p + 1);
    for (double& v : xp) v = rng.uniform(-1.0, 1.0);
    const SplitPoint x = SplitPoint::from_polar(std::move(xp), rng.uniform(0.6, 2.5),
                                                random_unit_q(sig, rng));
    auto w2 = y_star.omega;
    for (double& v : w2) v = -v;
    Multivector recon = representation_eval(section, x, y_star.omega, w2);
    const Multivector direct = gps_cauchy_kernel(sig, y_star, x);
    recon -= direct;
    swap = std::max(swap, recon.norm() / std::max(direct.norm(), 1e-30));
  }
  rows.push_back(row("kernel", "kernel_section", 0, "reconstruction_identity_rel", swap, 1e-13));

  double kscale = 0.0;
  for (int k = 0; k < 20; ++k) {
    std::vector<double> xp(sig.p + 1);
    for (double& v : xp) v = rng.uniform(-1.0, 1.0);
    const SplitPoint x =
        SplitPoint::from_polar(xp, rng.uniform(0.8, 1.6), random_unit_q(sig, rng));
    for (double lam : {1.0, 2.0}) {
      const SplitPoint y = SplitPoint::from_polar(y_star.xp, lam * y_star.r, y_star.omega);
      Multivector lhs = weighted_kernel_K(sig, y, x);
      lhs *= sphere_area(sig.q - 1) * std::pow(y.r, sig.q - 1);
      lhs -= gps_cauchy_kernel(sig, y, x);
      kscale = std::max(kscale, lhs.norm());
    }
  }
  rows.push_back(row("kernel", "weighted_kernel", 0, "radial_weight_identity", kscale, 1e-14));

  {
    std::vector<double> logs;
    for (int k = 1; k <= 6; ++k) {
      const double t = std::pow(2.0, -k);
      const SplitPoint x = SplitPoint::from_polar(y_star.xp, y_star.r + t, y_star.omega);
      logs.push_back(std::log2(gps_cauchy_kernel(sig, y_star, x).norm()));
    }
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < logs.size(); ++i) acc += logs[i + 1] - logs[i];
    const double slope = acc / (logs.size() - 1);
    rows.push_back(
        row("kernel", "singularity", 0, "order_vs_p_plus_1", std::abs(slope - (sig.p + 1)), 0.05));
  }
  return rows;
}

}  // namespace gps::detail
