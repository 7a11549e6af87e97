#pragma once

// State files: JSON objects {"dims": [..], "amplitudes": [[re, im], ..]}.

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "entpoly/errors.hpp"
#include "entpoly/states.hpp"

namespace entpoly {

inline nlohmann::json state_to_json(const MultiQuditState& psi) {
  nlohmann::json amps = nlohmann::json::array();
  for (const auto& a : psi.amplitudes()) amps.push_back({a.real(), a.imag()});
  return {{"dims", psi.dims()}, {"amplitudes", std::move(amps)}};
}

inline MultiQuditState state_from_json(const nlohmann::json& j) {
  try {
    if (!j.is_object() || !j.contains("dims") || !j.contains("amplitudes"))
      throw invalid_input("state file: expected fields 'dims' and 'amplitudes'");
    Dims dims;
    for (const auto& d : j.at("dims")) {
      if (!d.is_number_integer() || d.get<long long>() < 2)
        throw invalid_input("state file: dims must be integers >= 2");
      dims.push_back(d.get<std::size_t>());
    }
    std::vector<cplx> amps;
    for (const auto& a : j.at("amplitudes")) {
      if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number())
        throw invalid_input("state file: each amplitude must be a [re, im] pair");
      amps.emplace_back(a[0].get<double>(), a[1].get<double>());
    }
    return MultiQuditState::from_amplitudes(std::move(dims), std::move(amps));
  } catch (const nlohmann::json::exception& e) {
    throw invalid_input(std::string("state file: ") + e.what());
  }
}

inline std::string serialize_state(const MultiQuditState& psi) {
  return state_to_json(psi).dump();
}

inline MultiQuditState parse_state(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw invalid_input(std::string("state file: ") + e.what());
  }
  return state_from_json(j);
}

inline MultiQuditState read_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invalid_input("cannot open state file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_state(buf.str());
}

inline void write_state_file(const std::string& path, const MultiQuditState& psi) {
  std::ofstream out(path);
  if (!out) throw invalid_input("cannot write state file '" + path + "'");
  out << state_to_json(psi).dump(2) << '\n';
}

}  // namespace entpoly
