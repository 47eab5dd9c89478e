#include "pwind/problem.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pwind/errors.hpp"

namespace pwind {

using nlohmann::json;

Point2 mean_forcing(const Forcing& p) { return p.mean(); }

ProblemSpec reduce_to_zero_mean(const ProblemSpec& problem) {
  const Point2 mean = problem.forcing.mean();
  if (mean == Point2{0.0, 0.0}) return problem;
  return ProblemSpec{problem.field.shifted_by(mean), problem.forcing.zero_mean_part()};
}

namespace {

json point_json(Point2 p) { return json::array({p.x, p.y}); }

Point2 point_from(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw InputError(std::string("problem json: ") + what + " must be a [x, y] number pair");
  return Point2{j[0].get<double>(), j[1].get<double>()};
}

json field_json(const PlanarField& field) {
  if (field.is_shifted()) {
    json j;
    j["variant"] = "shifted";
    j["base"] = field_json(field.without_offset());
    j["offset"] = point_json(field.offset());
    return j;
  }
  json j;
  switch (field.variant()) {
    case PlanarField::Variant::ConjugatePolynomial: {
      j["variant"] = "conjugate_polynomial";
      json coeffs = json::array();
      for (const auto& c : field.conjugate_polynomial_coeffs()->coefficients())
        coeffs.push_back(json::array({c.real(), c.imag()}));
      j["coefficients"] = std::move(coeffs);
      break;
    }
    case PlanarField::Variant::SaturatingRadial: {
      j["variant"] = "saturating_radial";
      j["amplitude"] = field.saturating_amplitude().value();
      break;
    }
    case PlanarField::Variant::ComponentArctan: {
      j["variant"] = "component_arctan";
      const Point2 c = field.arctan_coeffs().value();
      j["c"] = point_json(c);
      break;
    }
    case PlanarField::Variant::Gradient: {
      const auto* o = field.gradient_oracles();
      if (o->json_name.empty())
        throw InputError("problem json: gradient field backed by code oracles is not serializable");
      j["variant"] = o->json_name;
      j["params"] = o->json_params;
      break;
    }
    case PlanarField::Variant::TruncatedGradient: {
      const auto* o = field.gradient_oracles();
      if (o->json_name.empty())
        throw InputError("problem json: truncated gradient over code oracles is not serializable");
      j["variant"] = "truncated_gradient";
      j["base"] = json{{"variant", o->json_name}, {"params", o->json_params}};
      j["R"] = field.truncation_radius().value();
      break;
    }
  }
  return j;
}

PlanarField named_gradient(const std::string& name, const std::vector<double>& params) {
  if (name == "radial_power") {
    if (params.size() != 1) throw InputError("problem json: radial_power takes one parameter (the exponent)");
    return PlanarField::radial_power_gradient(params[0]);
  }
  throw InputError("problem json: unknown gradient variant '" + name + "'");
}

PlanarField field_from(const json& j) {
  if (!j.is_object() || !j.contains("variant"))
    throw InputError("problem json: field must be an object with a 'variant'");
  const std::string variant = j.at("variant").get<std::string>();
  if (variant == "shifted") {
    return field_from(j.at("base")).shifted_by(point_from(j.at("offset"), "field offset"));
  }
  if (variant == "conjugate_polynomial") {
    std::vector<std::complex<double>> coeffs;
    for (const auto& c : j.at("coefficients")) {
      const Point2 p = point_from(c, "polynomial coefficient");
      coeffs.emplace_back(p.x, p.y);
    }
    return to_planar(coeffs);
  }
  if (variant == "saturating_radial") return PlanarField::saturating_radial(j.at("amplitude").get<double>());
  if (variant == "component_arctan") {
    const Point2 c = point_from(j.at("c"), "component_arctan c");
    return PlanarField::component_arctan(c.x, c.y);
  }
  if (variant == "truncated_gradient") {
    const json& base = j.at("base");
    PlanarField g = named_gradient(base.at("variant").get<std::string>(),
                                   base.at("params").get<std::vector<double>>());
    return build_truncated_field(g, j.at("R").get<double>());
  }
  if (j.contains("params")) return named_gradient(variant, j.at("params").get<std::vector<double>>());
  throw InputError("problem json: unknown field variant '" + variant + "'");
}

json forcing_json(const Forcing& f) {
  json j;
  j["T"] = f.period();
  j["mean"] = point_json(f.mean());
  json hs = json::array();
  for (const auto& h : f.harmonics())
    hs.push_back(json{{"k", h.k}, {"cos", point_json(h.cos_coeff)}, {"sin", point_json(h.sin_coeff)}});
  j["harmonics"] = std::move(hs);
  return j;
}

Forcing forcing_from(const json& j) {
  if (!j.is_object() || !j.contains("T")) throw InputError("problem json: forcing must be an object with 'T'");
  const double T = j.at("T").get<double>();
  const Point2 mean = j.contains("mean") ? point_from(j.at("mean"), "forcing mean") : Point2{};
  std::vector<Forcing::Harmonic> hs;
  if (j.contains("harmonics")) {
    for (const auto& h : j.at("harmonics")) {
      Forcing::Harmonic out;
      out.k = h.at("k").get<int>();
      if (h.contains("cos")) out.cos_coeff = point_from(h.at("cos"), "harmonic cos");
      if (h.contains("sin")) out.sin_coeff = point_from(h.at("sin"), "harmonic sin");
      hs.push_back(out);
    }
  }
  return Forcing(T, mean, std::move(hs));
}

}  // namespace

std::string problem_to_json(const ProblemSpec& problem) {
  json j;
  j["field"] = field_json(problem.field);
  j["forcing"] = forcing_json(problem.forcing);
  return j.dump(2) + "\n";
}

ProblemSpec problem_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("problem json: parse error: ") + e.what());
  }
  try {
    if (!j.is_object() || !j.contains("field") || !j.contains("forcing"))
      throw InputError("problem json: expected an object with 'field' and 'forcing'");
    return ProblemSpec{field_from(j.at("field")), forcing_from(j.at("forcing"))};
  } catch (const json::exception& e) {
    throw InputError(std::string("problem json: ") + e.what());
  }
}

ProblemSpec load_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open problem file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return problem_from_json(buf.str());
}

}  // namespace pwind
