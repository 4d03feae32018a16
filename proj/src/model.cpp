#include "jex/model.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "jex/errors.hpp"
#include "jex/existence.hpp"
#include "jex/stats.hpp"

namespace jex {

namespace {

constexpr double kMassTol = 1e-12;

}  // namespace

std::string Region::label() const {
  switch (kind) {
    case Kind::origin:
      return "origin";
    case Kind::axis: {
      int i = 1;
      std::uint32_t m = mask;
      while ((m & 1u) == 0) {
        m >>= 1;
        ++i;
      }
      return "axis:" + std::to_string(i);
    }
    case Kind::face: {
      // '+'-joined so the label stays a single CSV field.
      std::string key = FaceSet::from_mask(mask).key();
      std::replace(key.begin(), key.end(), ',', '+');
      return "face:" + key;
    }
  }
  return "?";
}

Region Region::parse_label(const std::string& label) {
  if (label == "origin") return Region::origin();
  if (label.rfind("axis:", 0) == 0) {
    return Region::axis(std::stoi(label.substr(5)));
  }
  if (label.rfind("face:", 0) == 0) {
    std::string key = label.substr(5);
    std::replace(key.begin(), key.end(), '+', ',');
    return Region::face(FaceSet::parse_key(key));
  }
  throw DomainError("malformed region label: \"" + label + "\"");
}

double JEModel::face_scale(int i, double x) const {
  const Marginal& m = marginals_[i - 1];
  const auto& d = distortions_[i - 1];
  if (d.has_value()) return d->distort(m.survival(x));
  const double q0 = m.q0();
  if (q0 <= 0.0) return 0.0;
  return std::clamp(m.survival(x) / q0, 0.0, 1.0);
}

std::vector<std::pair<Region, double>> JEModel::region_masses() const {
  std::vector<std::pair<Region, double>> masses;
  masses.reserve(allocation_.faces.size() + n_ + 1);
  for (std::size_t k = 0; k < allocation_.faces.size(); ++k) {
    masses.emplace_back(Region::face(allocation_.faces[k]),
                        allocation_.p[static_cast<Eigen::Index>(k)]);
  }
  for (int i = 1; i <= n_; ++i) {
    masses.emplace_back(Region::axis(i), axis_mass_[i - 1]);
  }
  masses.emplace_back(Region::origin(), origin_mass_);
  return masses;
}

double JEModel::cdf(const Eigen::VectorXd& x) const {
  if (x.size() != n_) throw ShapeError("point dimension mismatch");
  for (int i = 0; i < n_; ++i) {
    if (std::isnan(x[i])) throw DomainError("cdf argument is NaN");
    if (x[i] < 0.0) return 0.0;
  }
  // Same summation association as the stored region masses, so that the
  // CDF at the origin reproduces origin_mass() bit for bit.
  double survival_sum = 0.0;
  for (int i = 0; i < n_; ++i) survival_sum += marginals_[i].survival(x[i]);

  double face_acc = 0.0;
  std::vector<double> scales;
  std::vector<double> args;
  for (std::size_t k = 0; k < allocation_.faces.size(); ++k) {
    const double p = allocation_.p[static_cast<Eigen::Index>(k)];
    if (p <= 0.0) continue;
    const FaceSet& face = allocation_.faces[k];
    const Copula& copula = copulas_.at(face);
    const auto& members = face.members();
    const int d = face.size();
    scales.assign(members.size(), 0.0);
    for (int t = 0; t < d; ++t) scales[t] = face_scale(members[t], x[members[t] - 1]);

    // Inclusion-exclusion inner sum over subsets I of the face with
    // |I| >= 2: copula arguments carry the face scale on I and 1 elsewhere.
    double inner = 0.0;
    args.assign(members.size(), 1.0);
    const std::uint32_t full = (1u << d) - 1;
    for (std::uint32_t sub = 1; sub <= full; ++sub) {
      const int size = std::popcount(sub);
      if (size < 2) continue;
      for (int t = 0; t < d; ++t) {
        args[t] = (sub >> t) & 1u ? scales[t] : 1.0;
      }
      const double c = copula.cdf(std::span<const double>(args.data(), args.size()));
      inner += (size % 2 == 0) ? c : -c;
    }
    face_acc += p * inner;
  }
  return (1.0 - survival_sum) + face_acc;
}

double JEModel::axis_coordinate(int i, double u) const {
  const Marginal& m = marginals_[i - 1];
  const auto& d = distortions_[i - 1];
  if (!d.has_value()) return m.sample_positive_part(u);

  // Invert the normalized axis survival by locating
  // u* = sup{ s in [0, q0] : s - load * G(s) <= u * axis_mass }, which is
  // monotone in s because the load respects the modulus cap.
  const double load = face_load_[i - 1];
  const double target = u * axis_mass_[i - 1];
  double lo = 0.0;
  double hi = m.q0();
  for (int it = 0; it < 64; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double psi = mid - load * d->distort(mid);
    if (psi <= target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return m.inverse_survival(lo);
}

SampleBatch JEModel::sample(Rng& rng, int count) const {
  if (count < 1) throw DomainError("sample count must be >= 1");

  // Cumulative region weights in deterministic order: faces, axes, origin.
  const auto masses = region_masses();
  std::vector<double> cumulative(masses.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < masses.size(); ++k) {
    acc += std::max(masses[k].second, 0.0);
    cumulative[k] = acc;
  }
  std::size_t last_positive = 0;
  for (std::size_t k = 0; k < masses.size(); ++k) {
    if (masses[k].second > 0.0) last_positive = k;
  }

  // Per-face sampling plan.
  struct FacePlan {
    const Copula* copula;
    const std::vector<int>* members;
  };
  std::vector<FacePlan> plans(allocation_.faces.size());
  for (std::size_t k = 0; k < allocation_.faces.size(); ++k) {
    const FaceSet& face = allocation_.faces[k];
    const auto it = copulas_.find(face);
    plans[k] = {it == copulas_.end() ? nullptr : &it->second,
                &face.members()};
  }

  SampleBatch batch;
  batch.n = n_;
  batch.rows = Eigen::MatrixXd::Zero(count, n_);
  batch.regions.resize(count);

  std::vector<double> buf(n_);
  for (int row = 0; row < count; ++row) {
    const double r = rng.u01();
    std::size_t k =
        std::upper_bound(cumulative.begin(), cumulative.end(), r) -
        cumulative.begin();
    if (k >= masses.size()) k = last_positive;

    const Region& region = masses[k].first;
    batch.regions[row] = region;
    switch (region.kind) {
      case Region::Kind::origin:
        break;
      case Region::Kind::axis: {
        int i = 1;
        std::uint32_t mask = region.mask;
        while ((mask & 1u) == 0) {
          mask >>= 1;
          ++i;
        }
        batch.rows(row, i - 1) = axis_coordinate(i, rng.u01_open());
        break;
      }
      case Region::Kind::face: {
        const FacePlan& plan = plans[k];
        const int d = static_cast<int>(plan.members->size());
        plan.copula->sample_into(rng, std::span<double>(buf.data(), d));
        for (int t = 0; t < d; ++t) {
          const int i = (*plan.members)[t];
          const Marginal& m = marginals_[i - 1];
          const auto& g = distortions_[i - 1];
          batch.rows(row, i - 1) =
              g.has_value() ? inverse_distorted_survival(*g, m, buf[t])
                            : m.inverse_survival(buf[t] * m.q0());
        }
        break;
      }
    }
  }
  return batch;
}

JEModel build_model(std::vector<Marginal> marginals, FaceAllocation allocation,
                    std::map<FaceSet, Copula> copulas,
                    std::map<int, Distortion> distortions) {
  const int n = static_cast<int>(marginals.size());
  if (n < 2) throw DomainError("model needs at least two marginals");
  if (allocation.n != n) {
    throw ShapeError("allocation dimension does not match the marginals");
  }
  const auto canonical_faces = enumerate_faces(n);
  if (allocation.faces.size() != canonical_faces.size() ||
      static_cast<std::size_t>(allocation.p.size()) != canonical_faces.size()) {
    throw ShapeError("allocation must cover every face exactly once");
  }

  JEModel model;
  model.n_ = n;
  model.marginals_ = std::move(marginals);
  model.distortions_.assign(n, std::nullopt);
  for (auto& [index, distortion] : distortions) {
    if (index < 1 || index > n) {
      throw ShapeError("distortion index " + std::to_string(index) +
                       " out of range");
    }
    if (distortion.b() > model.marginals_[index - 1].q0() + kMassTol) {
      throw PairingError("distortion for coordinate " + std::to_string(index) +
                         " ends above the marginal's survival at zero");
    }
    model.distortions_[index - 1] = std::move(distortion);
  }
  model.generalized_ = false;
  for (const auto& d : model.distortions_) {
    if (d.has_value()) model.generalized_ = true;
  }

  // The binding capacity is q0 for undistorted coordinates and the modulus
  // G* otherwise, recomputed here rather than trusted from the allocation.
  Eigen::VectorXd caps(n);
  for (int i = 0; i < n; ++i) {
    const auto& d = model.distortions_[i];
    caps[i] = d.has_value() ? g_star(*d, model.marginals_[i])
                            : model.marginals_[i].q0();
  }

  model.face_load_ = allocation.per_coordinate_load();
  const char* cap_tag =
      model.generalized_ ? "G-JE_parameters_1" : "JE_parameters_1";
  for (int i = 0; i < n; ++i) {
    if (model.face_load_[i] > caps[i] + kMassTol) {
      throw ConstraintError(
          cap_tag, "coordinate " + std::to_string(i + 1) + " carries load " +
                       std::to_string(model.face_load_[i]) +
                       " above its capacity " + std::to_string(caps[i]) +
                       ", which would make its axis mass negative");
    }
  }

  double sum_q0 = 0.0;
  for (int i = 0; i < n; ++i) sum_q0 += model.marginals_[i].q0();
  const double origin = 1.0 - sum_q0 + allocation.weighted_mass();
  if (origin < -kMassTol) {
    throw ConstraintError(
        "JE_parameters_2",
        "origin mass " + std::to_string(origin) + " is negative");
  }

  model.axis_mass_ = Eigen::VectorXd(n);
  for (int i = 0; i < n; ++i) {
    model.axis_mass_[i] = model.marginals_[i].q0() - model.face_load_[i];
  }
  model.origin_mass_ = origin;

  for (std::size_t k = 0; k < allocation.faces.size(); ++k) {
    const FaceSet& face = allocation.faces[k];
    const double p = allocation.p[static_cast<Eigen::Index>(k)];
    const auto it = copulas.find(face);
    if (it == copulas.end()) {
      if (p > 0.0) {
        throw ShapeError("face " + face.key() +
                         " carries mass but has no copula");
      }
      continue;
    }
    if (it->second.dimension() != face.size()) {
      throw ShapeError("copula for face " + face.key() + " has dimension " +
                       std::to_string(it->second.dimension()) +
                       ", expected " + std::to_string(face.size()));
    }
  }

  model.allocation_ = std::move(allocation);
  model.copulas_ = std::move(copulas);

  const double total = model.allocation_.p.sum() + model.axis_mass_.sum() +
                       model.origin_mass_;
  if (std::abs(total - 1.0) > kMassTol) {
    throw ConstraintError("JE_parameters_2",
                          "region masses sum to " + std::to_string(total));
  }
  return model;
}

JEModel me_model(std::vector<Marginal> marginals) {
  const ExistenceReport report = check_me(marginals);
  if (!report.feasible) {
    throw ExistenceError(
        "MEcondition fails: sum of survivals at zero is " +
        std::to_string(report.lhs) + " > 1");
  }
  Eigen::VectorXd q0(static_cast<Eigen::Index>(marginals.size()));
  for (std::size_t i = 0; i < marginals.size(); ++i) {
    q0[static_cast<Eigen::Index>(i)] = marginals[i].q0();
  }
  return build_model(std::move(marginals), zero_allocation(q0), {});
}

double survival_all_positive(const JEModel& model, Rng& rng, int count) {
  return fraction_all_positive(model.sample(rng, count).rows);
}

Eigen::MatrixXd pearson_matrix(const JEModel& model, Rng& rng, int count) {
  return pearson(model.sample(rng, count).rows);
}

double cf_product_identity(const JEModel& model, const Eigen::VectorXd& t,
                           Rng& rng, int count) {
  if (t.size() != model.dimension()) {
    throw ShapeError("frequency vector dimension mismatch");
  }
  return cf_product_magnitude(model.sample(rng, count).rows, t);
}

Eigen::MatrixXd sample_independent(std::span<const Marginal> marginals,
                                   Rng& rng, int count) {
  const int n = static_cast<int>(marginals.size());
  Eigen::MatrixXd rows(count, n);
  for (int row = 0; row < count; ++row) {
    for (int i = 0; i < n; ++i) {
      rows(row, i) = marginals[i].inverse_survival(rng.u01());
    }
  }
  return rows;
}

}  // namespace jex
