#pragma once

// The ebhint subcommands. Exit status: 0 clean / all proved, 1 diagnostics or
// unproved obligations, 2 unreadable input.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "ebhint/cli/loader.hpp"
#include "ebhint/cli/report.hpp"
#include "ebhint/pog.hpp"
#include "ebhint/printer.hpp"
#include "ebhint/prove.hpp"
#include "ebhint/smt.hpp"
#include "ebhint/wellformed.hpp"

namespace ebhint::cli {

enum class Format { Text, Json };

struct RunOptions {
  HintMode hintMode = HintMode::Tactic;
  bool lasso = false;
  bool allHyps = false;
  int timeoutMillis = 2000;
  Format format = Format::Text;
  std::optional<std::string> jsonOut;
  bool noHints = false;
  unsigned jobs = 0;  // 0: one per hardware thread
};

namespace detail {

inline void printDiagnostics(const Loaded& l, const std::vector<Diagnostic>& ds, std::ostream& err) {
  for (const auto& d : ds) {
    auto it = l.paths.find(d.component);
    const std::string where = it == l.paths.end() ? d.component : it->second;
    err << where << ":" << d.location.line << ":" << d.location.column << ": " << d.code << ": "
        << d.message << "\n";
  }
}

// Parse diagnostics, then wellformedness and new-event checks of every component.
inline std::vector<Diagnostic> checkLoaded(const Loaded& l) {
  std::vector<Diagnostic> out = l.diagnostics;
  for (const auto& name : l.order) {
    std::vector<Diagnostic> ds;
    if (const Machine* m = l.workspace.machine(name)) {
      ds = wellformed(*m, l.workspace);
      auto extra = checkNewEvents(*m, l.workspace);
      ds.insert(ds.end(), extra.begin(), extra.end());
    } else if (const Context* c = l.workspace.context(name)) {
      ds = wellformed(*c, l.workspace);
    }
    sortDiagnostics(ds);
    out.insert(out.end(), ds.begin(), ds.end());
  }
  return out;
}

inline Json hypothesisJson(const Hypothesis& h) {
  return Json{{"label", h.label},
              {"predicate", toString(h.predicate)},
              {"selected", h.selected},
              {"origin", originName(h.origin)}};
}

inline Json obligationJson(const ProofObligation& po) {
  Json j = Json::object();
  j["name"] = po.name;
  j["kind"] = kindName(po.kind);
  j["event"] = po.origin.event;
  j["label"] = po.origin.label;
  j["goal"] = toString(po.sequent.goal);
  j["hypotheses"] = Json::array();
  for (const auto& h : po.sequent.hypotheses) j["hypotheses"].push_back(hypothesisJson(h));
  j["selectedLabels"] = po.sequent.selectedLabels();
  j["hintApplied"] = po.hintApplied ? Json(*po.hintApplied) : Json(nullptr);
  return j;
}

}  // namespace detail

struct Prepared {
  Loaded loaded;
  std::optional<Machine> machine;  // root machine, hints stripped on request
  PoSet pos;
};

// Loads, checks, and generates. Returns an exit status when that fails.
inline std::optional<int> prepare(const std::string& path, const RunOptions& opts, Prepared& out,
                                  std::ostream& err) {
  try {
    out.loaded = load(path);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  auto ds = detail::checkLoaded(out.loaded);
  if (!ds.empty() || out.loaded.root.empty()) {
    detail::printDiagnostics(out.loaded, ds, err);
    return 1;
  }
  const Workspace& ws = out.loaded.workspace;
  if (const Machine* m = ws.machine(out.loaded.root)) {
    out.machine = opts.noHints ? withoutHints(*m) : *m;
    std::vector<Diagnostic> hintDiags;
    out.pos = generate(*out.machine, ws, opts.hintMode, &hintDiags);
    if (!hintDiags.empty()) {
      detail::printDiagnostics(out.loaded, hintDiags, err);
      return 1;
    }
  } else {
    out.pos = generate(*ws.context(out.loaded.root), ws);
    out.pos.mode = opts.hintMode;
  }
  return std::nullopt;
}

inline int cmdCheck(const std::vector<std::string>& paths, std::ostream& out, std::ostream& err) {
  Loaded l;
  std::vector<std::filesystem::path> files(paths.begin(), paths.end());
  try {
    l = loadAll(files);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  auto ds = detail::checkLoaded(l);
  detail::printDiagnostics(l, ds, err);
  if (!ds.empty()) return 1;
  for (const auto& name : l.order) out << "OK " << name << "\n";
  return 0;
}

inline int cmdPos(const std::string& path, const RunOptions& opts, std::ostream& out, std::ostream& err) {
  Prepared p;
  if (auto code = prepare(path, opts, p, err)) return *code;
  if (opts.format == Format::Json) {
    Json j = Json::object();
    j["source"] = p.pos.source;
    j["mode"] = modeName(p.pos.mode);
    j["obligations"] = Json::array();
    for (const auto& po : p.pos.obligations) j["obligations"].push_back(detail::obligationJson(po));
    out << j.dump(2) << "\n";
    return 0;
  }
  for (const auto& po : p.pos.obligations) {
    out << po.name << " " << kindName(po.kind) << "\n";
    out << "  goal: " << toString(po.sequent.goal) << "\n";
    out << "  selected:";
    for (const auto& l : po.sequent.selectedLabels()) out << " " << l;
    out << "\n";
    if (po.hintApplied) out << "  hint: " << *po.hintApplied << "\n";
  }
  return 0;
}

// Proves every obligation, in parallel, keeping generation order in the report.
inline Report proveAll(const PoSet& pos, const std::optional<Machine>& machine, const RunOptions& opts) {
  ProveOptions popts;
  popts.lasso = opts.lasso;
  popts.allHypotheses = opts.allHyps;
  popts.timeout = std::chrono::milliseconds(opts.timeoutMillis);
  std::vector<ObligationReport> results(pos.obligations.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < pos.obligations.size(); i = next++) {
      const ProofObligation& po = pos.obligations[i];
      std::vector<Hint> hints;
      if (machine && pos.mode == HintMode::Tactic) hints = hintsFor(po, *machine);
      const auto start = std::chrono::steady_clock::now();
      ProofResult r = proveObligation(po, hints, popts);
      const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();
      results[i] = reportFor(po, r, ms);
    }
  };
  unsigned jobs = opts.jobs ? opts.jobs : std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(1, pos.obligations.size())));
  std::vector<std::thread> threads;
  for (unsigned t = 1; t < jobs; ++t) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();

  Report report;
  report.machine = pos.source;
  report.mode = modeName(pos.mode);
  report.obligations = std::move(results);
  report.tally();
  return report;
}

inline int cmdProve(const std::string& path, const RunOptions& opts, std::ostream& out, std::ostream& err) {
  if (opts.timeoutMillis <= 0) {
    err << "error: timeout must be positive\n";
    return 2;
  }
  Prepared p;
  if (auto code = prepare(path, opts, p, err)) return *code;
  Report report = proveAll(p.pos, p.machine, opts);
  if (opts.jsonOut) {
    std::ofstream f(*opts.jsonOut, std::ios::binary);
    if (!f) {
      err << "error: cannot write '" << *opts.jsonOut << "'\n";
      return 2;
    }
    f << Json(report).dump(2) << "\n";
  }
  if (opts.format == Format::Json) {
    out << Json(report).dump(2) << "\n";
  } else {
    for (const auto& o : report.obligations) {
      std::string tag = o.status;
      std::transform(tag.begin(), tag.end(), tag.begin(), [](unsigned char c) { return std::toupper(c); });
      out << tag << " " << o.name << "\n";
      if (!o.reason.empty()) out << "  reason: " << o.reason << "\n";
      if (o.counterexample) {
        out << "  counterexample:";
        for (const auto& [k, v] : *o.counterexample) out << " " << k << "=" << v;
        out << "\n";
      }
    }
    out << "summary: " << report.summary.total << " obligations, " << report.summary.proved << " proved, "
        << report.summary.unproved << " unproved, " << report.summary.unsupported << " unsupported\n";
  }
  return report.summary.proved == report.summary.total ? 0 : 1;
}

inline int cmdExportSmt(const std::string& path, const std::string& poName, bool respectSelection,
                        const RunOptions& opts, std::ostream& out, std::ostream& err) {
  Prepared p;
  if (auto code = prepare(path, opts, p, err)) return *code;
  const ProofObligation* po = p.pos.find(poName);
  if (!po) {
    err << "error: no obligation named '" << poName << "'\n";
    return 1;
  }
  try {
    out << exportSmt(*po, respectSelection);
  } catch (const SmtExportError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace ebhint::cli
