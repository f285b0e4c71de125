#pragma once

#include <filesystem>
#include <string>

#include "ebhint/cli/loader.hpp"
#include "ebhint/parser.hpp"

namespace testing_support {

inline ebhint::Formula F(std::string_view text) { return ebhint::parseFormula(text); }

inline std::filesystem::path model(const std::string& name) {
  return std::filesystem::path(EBHINT_MODELS_DIR) / (name + ".ebh");
}

inline ebhint::Component component(std::string_view text) {
  auto out = ebhint::parse(text);
  if (!out.ok()) {
    std::string msg = "parse failed";
    for (const auto& d : out.diagnostics) msg += "\n" + d.code + ": " + d.message;
    throw std::runtime_error(msg);
  }
  return *out.component;
}

inline ebhint::Machine machine(std::string_view text) { return std::get<ebhint::Machine>(component(text)); }

}  // namespace testing_support
