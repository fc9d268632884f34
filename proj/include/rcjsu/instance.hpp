#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace rcjsu {

/// One job of an RCJSU instance. Times are integral, weight and resource
/// usage are real-valued. `id` is the dense 0-based index used everywhere
/// in the solver; the id that appeared in the instance file is kept in
/// Instance::original_ids for reporting.
struct Job {
  int id = 0;
  int machine = 0;
  std::int64_t release = 0;
  std::int64_t proc = 1;
  std::int64_t due = 0;
  double weight = 0.0;
  double resource = 0.0;

  friend bool operator==(const Job&, const Job&) = default;
};

/// A scheduling instance: jobs on dedicated machines sharing one renewable
/// resource of nominal capacity `capacity`. Precedences are ordered pairs of
/// dense job ids (a, b) meaning a completes before b starts; both ends must
/// live on the same machine. Immutable once built.
struct Instance {
  std::string name;
  int machines = 0;
  double capacity = 0.0;
  std::vector<Job> jobs;
  std::vector<std::pair<int, int>> precedences;
  std::vector<long long> original_ids;  // dense id -> id in the file

  int num_jobs() const { return static_cast<int>(jobs.size()); }

  long long original_id(int dense) const {
    return original_ids.empty() ? dense : original_ids[static_cast<std::size_t>(dense)];
  }

  /// preds[j] = dense ids that must complete before j starts
  std::vector<std::vector<int>> predecessor_lists() const {
    std::vector<std::vector<int>> preds(jobs.size());
    for (auto [a, b] : precedences) preds[static_cast<std::size_t>(b)].push_back(a);
    return preds;
  }

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// Flat predecessor index over dense job ids (two buffers instead of a
/// vector-of-vectors; decoding touches it in every inner loop).
struct PredIndex {
  std::vector<int> offsets;  // size n + 1
  std::vector<int> preds;    // grouped by successor

  explicit PredIndex(const Instance& inst) {
    const std::size_t n = inst.jobs.size();
    offsets.assign(n + 1, 0);
    for (auto [a, b] : inst.precedences) ++offsets[static_cast<std::size_t>(b) + 1];
    for (std::size_t j = 1; j <= n; ++j) offsets[j] += offsets[j - 1];
    preds.resize(inst.precedences.size());
    std::vector<int> fill(offsets.begin(), offsets.end() - 1);
    for (auto [a, b] : inst.precedences)
      preds[static_cast<std::size_t>(fill[static_cast<std::size_t>(b)]++)] = a;
  }

  struct Range {
    const int* first;
    const int* last;
    const int* begin() const { return first; }
    const int* end() const { return last; }
  };
  Range of(int j) const {
    return {preds.data() + offsets[static_cast<std::size_t>(j)],
            preds.data() + offsets[static_cast<std::size_t>(j) + 1]};
  }
};

/// Largest resource requirement of any job; the smallest capacity under which
/// every job still fits on its own.
inline double u_min(const Instance& inst) {
  if (inst.jobs.empty()) throw std::invalid_argument("u_min: instance has no jobs");
  double m = 0.0;
  for (const Job& j : inst.jobs) m = std::max(m, j.resource);
  return m;
}

/// Checks every structural invariant and returns all violations (empty means
/// the instance is valid). Does not throw.
inline std::vector<std::string> validate_instance(const Instance& inst) {
  std::vector<std::string> out;
  const int n = inst.num_jobs();
  if (inst.machines < 1) out.push_back("machine count must be positive");
  if (inst.capacity < 0.0) out.push_back("nominal capacity must be nonnegative");
  for (const Job& j : inst.jobs) {
    const std::string tag = "job " + std::to_string(inst.original_id(j.id));
    if (j.proc <= 0) out.push_back(tag + ": nonpositive processing time");
    if (j.release < 0) out.push_back(tag + ": negative release time");
    if (j.due < 0) out.push_back(tag + ": negative due time");
    if (j.weight < 0.0) out.push_back(tag + ": negative weight");
    if (j.resource < 0.0) out.push_back(tag + ": negative resource usage");
    if (j.resource > inst.capacity) out.push_back(tag + ": job exceeds nominal capacity");
    if (j.machine < 0 || j.machine >= inst.machines)
      out.push_back(tag + ": machine index out of range");
  }
  bool prec_ok = true;
  for (auto [a, b] : inst.precedences) {
    if (a < 0 || a >= n || b < 0 || b >= n) {
      out.push_back("precedence references unknown job");
      prec_ok = false;
      continue;
    }
    if (a == b) {
      out.push_back("precedence cycle");  // self-loop is the smallest cycle
      prec_ok = false;
      continue;
    }
    if (inst.jobs[static_cast<std::size_t>(a)].machine !=
        inst.jobs[static_cast<std::size_t>(b)].machine)
      out.push_back("precedence (" + std::to_string(inst.original_id(a)) + " -> " +
                    std::to_string(inst.original_id(b)) + ") crosses machines");
  }
  if (prec_ok && n > 0) {
    // Kahn's algorithm; leftover nodes mean a cycle
    std::vector<int> indeg(static_cast<std::size_t>(n), 0);
    std::vector<std::vector<int>> succ(static_cast<std::size_t>(n));
    for (auto [a, b] : inst.precedences) {
      succ[static_cast<std::size_t>(a)].push_back(b);
      ++indeg[static_cast<std::size_t>(b)];
    }
    std::vector<int> stack;
    for (int j = 0; j < n; ++j)
      if (indeg[static_cast<std::size_t>(j)] == 0) stack.push_back(j);
    int seen = 0;
    while (!stack.empty()) {
      int j = stack.back();
      stack.pop_back();
      ++seen;
      for (int s : succ[static_cast<std::size_t>(j)])
        if (--indeg[static_cast<std::size_t>(s)] == 0) stack.push_back(s);
    }
    if (seen != n) out.push_back("precedence cycle");
  }
  return out;
}

namespace detail {

struct Token {
  std::string text;
  int column = 0;  // 1-based
};

inline std::vector<Token> tokenize_line(const std::string& line) {
  std::vector<Token> toks;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) &&
           line[i] != '#')
      ++i;
    toks.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return toks;
}

[[noreturn]] inline void parse_fail(int line, int col, const std::string& what) {
  throw std::runtime_error("parse error at line " + std::to_string(line) + ", column " +
                           std::to_string(col) + ": " + what);
}

inline long long parse_int(const Token& t, int line, const char* field) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(t.text, &pos);
  } catch (const std::exception&) {
    parse_fail(line, t.column, std::string("expected integer for ") + field);
  }
  if (pos != t.text.size())
    parse_fail(line, t.column, std::string("expected integer for ") + field);
  return v;
}

inline double parse_real(const Token& t, int line, const char* field) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(t.text, &pos);
  } catch (const std::exception&) {
    parse_fail(line, t.column, std::string("expected number for ") + field);
  }
  if (pos != t.text.size())
    parse_fail(line, t.column, std::string("expected number for ") + field);
  return v;
}

// shortest representation that parses back to the same double
inline std::string format_real(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace detail

/// Parses the line-oriented instance format:
///
///   NAME <string>
///   MACHINES <l>
///   CAPACITY <G>
///   JOBS <n>
///   JOB <id> <machine> <release> <proc> <due> <weight> <resource>   (x n)
///   PREC <a> <b>                                                    (x any)
///
/// '#' starts a comment. Job ids may be arbitrary integers; they are mapped to
/// dense 0..n-1 in order of appearance. Throws std::runtime_error with line
/// and column on syntax errors, and with the violation list on semantic errors.
inline Instance parse_instance(const std::string& text) {
  using namespace detail;
  Instance inst;
  bool saw_machines = false, saw_capacity = false;
  long long declared_jobs = -1;
  std::unordered_map<long long, int> dense;
  struct RawPrec {
    long long a, b;
    int line, col;
  };
  std::vector<RawPrec> raw_precs;

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = tokenize_line(line);
    if (toks.empty()) continue;
    const std::string& kw = toks[0].text;
    auto need = [&](std::size_t k) {
      if (toks.size() != k + 1)
        parse_fail(lineno, toks[0].column,
                   kw + " expects " + std::to_string(k) + " value(s)");
    };
    if (kw == "NAME") {
      if (toks.size() < 2) parse_fail(lineno, toks[0].column, "NAME expects a value");
      std::string name = toks[1].text;
      for (std::size_t i = 2; i < toks.size(); ++i) name += " " + toks[i].text;
      inst.name = name;
    } else if (kw == "MACHINES") {
      need(1);
      inst.machines = static_cast<int>(parse_int(toks[1], lineno, "MACHINES"));
      saw_machines = true;
    } else if (kw == "CAPACITY") {
      need(1);
      inst.capacity = parse_real(toks[1], lineno, "CAPACITY");
      saw_capacity = true;
    } else if (kw == "JOBS") {
      need(1);
      declared_jobs = parse_int(toks[1], lineno, "JOBS");
    } else if (kw == "JOB") {
      need(7);
      long long file_id = parse_int(toks[1], lineno, "job id");
      if (dense.count(file_id))
        parse_fail(lineno, toks[1].column,
                   "duplicate job id " + std::to_string(file_id));
      Job j;
      j.id = static_cast<int>(inst.jobs.size());
      j.machine = static_cast<int>(parse_int(toks[2], lineno, "machine"));
      j.release = parse_int(toks[3], lineno, "release");
      j.proc = parse_int(toks[4], lineno, "proc");
      j.due = parse_int(toks[5], lineno, "due");
      j.weight = parse_real(toks[6], lineno, "weight");
      j.resource = parse_real(toks[7], lineno, "resource");
      dense[file_id] = j.id;
      inst.jobs.push_back(j);
      inst.original_ids.push_back(file_id);
    } else if (kw == "PREC") {
      need(2);
      raw_precs.push_back({parse_int(toks[1], lineno, "job id"),
                           parse_int(toks[2], lineno, "job id"), lineno,
                           toks[1].column});
    } else {
      parse_fail(lineno, toks[0].column, "unknown directive '" + kw + "'");
    }
  }

  if (!saw_machines) throw std::runtime_error("parse error: missing MACHINES line");
  if (!saw_capacity) throw std::runtime_error("parse error: missing CAPACITY line");
  if (declared_jobs < 0) throw std::runtime_error("parse error: missing JOBS line");
  if (declared_jobs == 0 || inst.jobs.empty()) throw std::runtime_error("no jobs");
  if (declared_jobs != static_cast<long long>(inst.jobs.size()))
    throw std::runtime_error("parse error: JOBS declares " + std::to_string(declared_jobs) +
                             " but " + std::to_string(inst.jobs.size()) +
                             " JOB lines found");
  for (const auto& rp : raw_precs) {
    auto ia = dense.find(rp.a);
    auto ib = dense.find(rp.b);
    if (ia == dense.end() || ib == dense.end())
      detail::parse_fail(rp.line, rp.col, "PREC references unknown job id");
    inst.precedences.emplace_back(ia->second, ib->second);
  }

  auto violations = validate_instance(inst);
  if (!violations.empty()) {
    std::string msg = "invalid instance:";
    for (const auto& v : violations) msg += "\n  - " + v;
    throw std::runtime_error(msg);
  }
  return inst;
}

/// Inverse of parse_instance; uses original job ids so that
/// parse_instance(serialize_instance(i)) == i.
inline std::string serialize_instance(const Instance& inst) {
  std::ostringstream out;
  out << "NAME " << inst.name << "\n";
  out << "MACHINES " << inst.machines << "\n";
  out << "CAPACITY " << detail::format_real(inst.capacity) << "\n";
  out << "JOBS " << inst.num_jobs() << "\n";
  for (const Job& j : inst.jobs) {
    out << "JOB " << inst.original_id(j.id) << " " << j.machine << " " << j.release << " "
        << j.proc << " " << j.due << " " << detail::format_real(j.weight) << " "
        << detail::format_real(j.resource) << "\n";
  }
  for (auto [a, b] : inst.precedences)
    out << "PREC " << inst.original_id(a) << " " << inst.original_id(b) << "\n";
  return out.str();
}

}  // namespace rcjsu
