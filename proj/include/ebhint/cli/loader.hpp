#pragma once

// Loads a .ebh file together with the components it sees, extends, or
// refines, resolved as <name>.ebh in the same directory.

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ebhint/model.hpp"
#include "ebhint/parser.hpp"
#include "ebhint/wellformed.hpp"

namespace ebhint::cli {

// An unreadable file. Maps to exit status 2.
struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

struct Loaded {
  Workspace workspace;
  std::string root;                       // component named by the requested path
  std::vector<std::string> order;         // dependencies first
  std::map<std::string, std::string> paths;  // component name -> file
  std::vector<Diagnostic> diagnostics;    // parse diagnostics
};

inline std::string readFile(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw IoError("cannot read '" + p.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace detail {

inline std::vector<std::string> references(const Component& c) {
  std::vector<std::string> out;
  if (const auto* m = std::get_if<Machine>(&c)) {
    if (m->sees) out.push_back(*m->sees);
    if (m->refines) out.push_back(*m->refines);
  } else if (const auto* x = std::get_if<Context>(&c)) {
    if (x->extends) out.push_back(*x->extends);
  }
  return out;
}

class Loader {
 public:
  explicit Loader(Loaded& out) : out_(out) {}

  // Returns the component name, or empty when the file did not parse.
  std::string load(const std::filesystem::path& file, bool required) {
    const std::string key = file.lexically_normal().string();
    if (auto it = byPath_.find(key); it != byPath_.end()) return it->second;
    if (!required && !std::filesystem::exists(file)) return "";
    const std::string text = readFile(file);
    byPath_[key] = "";
    ParseOutcome parsed = parse(SourceFile{file.string(), text});
    if (!parsed.ok()) {
      for (const auto& d : parsed.diagnostics) {
        out_.diagnostics.push_back({file.string(), d.location, d.code, d.message});
      }
      return "";
    }
    const Component c = std::move(*parsed.component);
    const std::string name = componentName(c);
    byPath_[key] = name;
    for (const auto& ref : references(c)) {
      if (out_.workspace.context(ref) || out_.workspace.machine(ref)) continue;
      load(file.parent_path() / (ref + ".ebh"), false);
    }
    if (!out_.paths.count(name)) {
      out_.paths[name] = file.string();
      out_.order.push_back(name);
      out_.workspace.add(c);
    }
    return name;
  }

 private:
  Loaded& out_;
  std::map<std::string, std::string> byPath_;
};

}  // namespace detail

inline Loaded load(const std::filesystem::path& file) {
  Loaded out;
  detail::Loader loader(out);
  out.root = loader.load(file, true);
  return out;
}

// Loads several files into one workspace.
inline Loaded loadAll(const std::vector<std::filesystem::path>& files) {
  Loaded out;
  detail::Loader loader(out);
  for (const auto& f : files) {
    std::string n = loader.load(f, true);
    if (out.root.empty()) out.root = n;
  }
  return out;
}

}  // namespace ebhint::cli
