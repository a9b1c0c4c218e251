#include "mmr/serialize.hpp"

#include <stdexcept>
#include <string>

namespace mmr {

namespace {

Json interleave(const std::vector<Complex>& v) {
  Json out = Json::array();
  for (const auto& z : v) {
    out.push_back(z.real());
    out.push_back(z.imag());
  }
  return out;
}

std::vector<Complex> deinterleave(const Json& arr) {
  if (!arr.is_array() || arr.size() % 2 != 0) {
    throw std::invalid_argument("complex payload must be an even-length array");
  }
  std::vector<Complex> out;
  out.reserve(arr.size() / 2);
  for (std::size_t i = 0; i < arr.size(); i += 2) {
    out.emplace_back(arr.at(i).get<double>(), arr.at(i + 1).get<double>());
  }
  return out;
}

template <typename F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed document: ") + e.what());
  }
}

DensityBasis basis_from_string(const std::string& s) {
  if (s == "dense_computational") return DensityBasis::DenseComputational;
  if (s == "symmetric_sector") return DensityBasis::SymmetricSector;
  if (s == "component_span") return DensityBasis::ComponentSpan;
  throw std::invalid_argument("unknown density basis '" + s + "'");
}

}  // namespace

Json to_json(const MssPureState& psi) {
  Json doc;
  doc["n"] = psi.size();
  std::visit(
      [&](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Dicke>) {
          doc["form"] = "dicke";
          doc["payload"] = Json{{"k", f.k}};
        } else if constexpr (std::is_same_v<T, DickeSuperposition>) {
          doc["form"] = "dicke_superposition";
          doc["payload"] = interleave(f.coeffs);
        } else if constexpr (std::is_same_v<T, Product>) {
          doc["form"] = "product";
          doc["payload"] = f.theta;
        } else {
          doc["form"] = "dense";
          doc["payload"] = interleave(f.amplitudes);
        }
      },
      psi.form());
  return doc;
}

MssPureState state_from_json(const Json& doc) {
  return guarded([&] {
    const int n = doc.at("n").get<int>();
    const auto form = doc.at("form").get<std::string>();
    const Json& payload = doc.at("payload");
    if (form == "dicke") return make_dicke(n, payload.at("k").get<int>());
    if (form == "dicke_superposition") return make_dicke_superposition(n, deinterleave(payload));
    if (form == "product") {
      auto theta = payload.get<std::vector<double>>();
      if (theta.size() != static_cast<std::size_t>(n)) {
        throw std::invalid_argument("product payload length differs from n");
      }
      return make_product(std::move(theta));
    }
    if (form == "dense") return make_dense(n, deinterleave(payload));
    throw std::invalid_argument("unknown state form '" + form + "'");
  });
}

Json to_json(const MicroMacroState& s) {
  const auto [a0, a1] = s.qubit_amplitudes();
  Json doc;
  doc["psi0"] = to_json(s.psi0());
  doc["psi1"] = to_json(s.psi1());
  doc["qubit_amplitudes"] = {a0.real(), a0.imag(), a1.real(), a1.imag()};
  doc["orthogonality_tol"] = s.orthogonality_tol();
  return doc;
}

MicroMacroState micro_macro_from_json(const Json& doc) {
  return guarded([&] {
    auto psi0 = state_from_json(doc.at("psi0"));
    auto psi1 = state_from_json(doc.at("psi1"));
    std::pair<Complex, Complex> amps{Complex(M_SQRT1_2), Complex(M_SQRT1_2)};
    if (doc.contains("qubit_amplitudes")) {
      const auto a = deinterleave(doc.at("qubit_amplitudes"));
      if (a.size() != 2) throw std::invalid_argument("qubit_amplitudes needs four numbers");
      amps = {a[0], a[1]};
    }
    const double tol = doc.value("orthogonality_tol", MicroMacroState::kDefaultOrthogonalityTol);
    return MicroMacroState(std::move(psi0), std::move(psi1), amps, tol);
  });
}

Json to_json(const BipartiteDensity& rho) {
  Json doc;
  doc["dims"] = {rho.qubit_dim, rho.rest_dim};
  doc["basis"] = to_string(rho.basis);
  Json m = Json::array();
  for (Eigen::Index i = 0; i < rho.matrix.rows(); ++i) {
    for (Eigen::Index j = 0; j < rho.matrix.cols(); ++j) {
      m.push_back(rho.matrix(i, j).real());
      m.push_back(rho.matrix(i, j).imag());
    }
  }
  doc["matrix"] = std::move(m);
  return doc;
}

BipartiteDensity density_from_json(const Json& doc) {
  return guarded([&] {
    BipartiteDensity rho;
    const auto dims = doc.at("dims").get<std::vector<int>>();
    if (dims.size() != 2) throw std::invalid_argument("dims must have two entries");
    rho.qubit_dim = dims[0];
    rho.rest_dim = dims[1];
    rho.basis = basis_from_string(doc.at("basis").get<std::string>());
    const auto entries = deinterleave(doc.at("matrix"));
    const Eigen::Index dim = static_cast<Eigen::Index>(rho.qubit_dim) * rho.rest_dim;
    if (dim <= 0 || static_cast<Eigen::Index>(entries.size()) != dim * dim) {
      throw std::invalid_argument("matrix payload does not match dims");
    }
    rho.matrix.resize(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      for (Eigen::Index j = 0; j < dim; ++j) {
        rho.matrix(i, j) = entries[static_cast<std::size_t>(i * dim + j)];
      }
    }
    rho.validate();
    return rho;
  });
}

Json to_json(const OutcomeBranch& b) {
  Json doc;
  doc["outcome"] = to_string(b.outcome);
  doc["probability"] = b.probability;
  doc["measured_index"] = b.measured_index;
  doc["component_overlap"] = b.component_overlap;
  doc["entropy"] = branch_entropy(b);
  doc["post_state"] = b.post_state ? to_json(*b.post_state) : Json(nullptr);
  return doc;
}

Json to_json(const SymmetricBranchReport& r) {
  return Json{{"p0_up", r.p0_up},     {"p1_up", r.p1_up},         {"e_up", r.e_up},
              {"e_down", r.e_down},   {"prob_up", r.prob_up},     {"prob_down", r.prob_down},
              {"avg", r.avg}};
}

Json to_json(const HessianSpectrum& h) {
  Json eig = Json::array();
  for (const auto& [value, mult] : h.eigenvalues) {
    eig.push_back(Json{{"value", value}, {"multiplicity", mult}});
  }
  return Json{{"a", h.a}, {"b", h.b}, {"c", h.c}, {"eigenvalues", eig},
              {"all_negative", h.all_negative}};
}

Json to_json(const SpinMarginals& m) {
  return Json{{"n", m.size()}, {"p0_up", m.p0_up()}, {"p1_up", m.p1_up()}};
}

Json to_json(const MaximizerResult& r) {
  Json doc;
  doc["argmax"] = to_json(r.argmax);
  doc["value"] = r.value;
  doc["iterations"] = r.iterations;
  doc["converged"] = r.converged;
  doc["gradient_norm"] = r.gradient_norm;
  doc["history_length"] = r.history_length;
  doc["starts"] = r.runs.size();
  return doc;
}

MaximizerConfig maximizer_config_from_json(const Json& doc) {
  return guarded([&] {
    MaximizerConfig cfg;
    cfg.tol = doc.value("tol", cfg.tol);
    cfg.max_iter = doc.value("max_iter", cfg.max_iter);
    cfg.seed = doc.value("seed", cfg.seed);
    cfg.starts = doc.value("starts", cfg.starts);
    return cfg;
  });
}

}  // namespace mmr
