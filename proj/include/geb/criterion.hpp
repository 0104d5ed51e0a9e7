#pragma once

#include <array>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "geb/dataset.hpp"
#include "geb/error.hpp"

namespace geb {

// Search criteria are single-output boolean circuits over the bits of a
// dataset. The gate count of a criterion is the processor size p used by the
// cost model; its depth in gate levels is the evaluation time t, one gate
// level per engine cycle.

enum class GateKind : std::uint8_t { And, Or, Xor, Not, Xnor };

// A value in the circuit: input bit x<index> or the output of gate g<index>.
struct Ref {
  enum class Kind : std::uint8_t { Input, Gate };

  Kind kind = Kind::Input;
  std::uint32_t index = 0;

  static constexpr Ref input(std::uint32_t i) { return {Kind::Input, i}; }
  static constexpr Ref gate(std::uint32_t i) { return {Kind::Gate, i}; }

  friend constexpr bool operator==(const Ref&, const Ref&) = default;
};

// NOT takes one operand; AND/OR/XOR take two. XNOR takes two operands with
// the usual semantics !(a ^ b), or one operand as the fused compare gate: a
// bit compared against a constant 1 is XOR-with-1 followed by NOT, which
// collapses to a pass-through. The fused form is what lets an equality
// comparator charge exactly one gate per pattern bit.
struct Gate {
  GateKind kind = GateKind::And;
  std::uint8_t arity = 2;
  std::array<Ref, 2> in{};

  static constexpr Gate unary(GateKind kind, Ref a) { return {kind, 1, {a, a}}; }
  static constexpr Gate binary(GateKind kind, Ref a, Ref b) { return {kind, 2, {a, b}}; }

  friend constexpr bool operator==(const Gate&, const Gate&) = default;
};

namespace detail {

inline bool arity_allowed(GateKind kind, std::uint8_t arity) {
  switch (kind) {
    case GateKind::Not:
      return arity == 1;
    case GateKind::Xnor:
      return arity == 1 || arity == 2;
    default:
      return arity == 2;
  }
}

inline const char* gate_kind_name(GateKind kind) {
  switch (kind) {
    case GateKind::And:
      return "AND";
    case GateKind::Or:
      return "OR";
    case GateKind::Xor:
      return "XOR";
    case GateKind::Not:
      return "NOT";
    case GateKind::Xnor:
      return "XNOR";
  }
  return "?";
}

}  // namespace detail

// Immutable, validated circuit. Gates are stored in topological order: a gate
// may reference inputs and strictly earlier gates only.
class Criterion {
 public:
  Criterion(std::uint32_t input_width, std::vector<Gate> gates, Ref output)
      : input_width_(input_width), gates_(std::move(gates)), output_(output) {
    if (input_width_ == 0) throw InvalidParameter("criterion input width must be >= 1");
    for (std::size_t i = 0; i < gates_.size(); ++i) {
      const Gate& g = gates_[i];
      if (!detail::arity_allowed(g.kind, g.arity)) {
        throw InvalidParameter("gate " + std::to_string(i) + ": bad arity for kind");
      }
      for (std::uint8_t k = 0; k < g.arity; ++k) {
        check_ref(g.in[k], i, "gate " + std::to_string(i));
      }
    }
    check_ref(output_, gates_.size(), "output");
  }

  std::uint32_t input_width() const { return input_width_; }
  std::uint32_t gate_count() const { return static_cast<std::uint32_t>(gates_.size()); }
  const std::vector<Gate>& gates() const { return gates_; }
  Ref output() const { return output_; }

  friend bool operator==(const Criterion&, const Criterion&) = default;

 private:
  void check_ref(Ref r, std::size_t position, const std::string& what) const {
    if (r.kind == Ref::Kind::Input) {
      if (r.index >= input_width_) {
        throw InvalidParameter(what + ": input x" + std::to_string(r.index) +
                               " out of range for width " + std::to_string(input_width_));
      }
    } else {
      if (r.index >= position) {
        throw InvalidParameter(what + ": reference to g" + std::to_string(r.index) +
                               " is not an earlier gate");
      }
    }
  }

  std::uint32_t input_width_;
  std::vector<Gate> gates_;
  Ref output_;
};

// This is p.
inline std::uint32_t gate_count(const Criterion& c) { return c.gate_count(); }

inline bool evaluate(const Criterion& criterion, const Dataset& dataset) {
  if (dataset.width() != criterion.input_width()) {
    throw InvalidParameter("dataset width " + std::to_string(dataset.width()) +
                           " does not match criterion width " +
                           std::to_string(criterion.input_width()));
  }
  std::vector<std::uint8_t> value(criterion.gate_count());
  auto get = [&](Ref r) -> std::uint8_t {
    return r.kind == Ref::Kind::Input ? static_cast<std::uint8_t>(dataset.bit(r.index))
                                      : value[r.index];
  };
  const auto& gates = criterion.gates();
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const Gate& g = gates[i];
    const std::uint8_t a = get(g.in[0]);
    std::uint8_t v = 0;
    switch (g.kind) {
      case GateKind::And:
        v = a & get(g.in[1]);
        break;
      case GateKind::Or:
        v = a | get(g.in[1]);
        break;
      case GateKind::Xor:
        v = a ^ get(g.in[1]);
        break;
      case GateKind::Not:
        v = a ^ 1u;
        break;
      case GateKind::Xnor:
        v = g.arity == 2 ? (a ^ get(g.in[1]) ^ 1u) : a;
        break;
    }
    value[i] = v & 1u;
  }
  return get(criterion.output()) != 0;
}

// Longest input-to-output path in gate levels. This is t, in cycles.
inline std::uint32_t depth(const Criterion& criterion) {
  std::vector<std::uint32_t> level(criterion.gate_count());
  auto ref_level = [&](Ref r) -> std::uint32_t {
    return r.kind == Ref::Kind::Input ? 0 : level[r.index];
  };
  const auto& gates = criterion.gates();
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const Gate& g = gates[i];
    std::uint32_t deepest = ref_level(g.in[0]);
    if (g.arity == 2) deepest = std::max(deepest, ref_level(g.in[1]));
    level[i] = deepest + 1;
  }
  return ref_level(criterion.output());
}

namespace detail {

// Balanced pairwise reduction; appends len(refs)-1 gates of `kind` and
// returns the ref of the root. An odd element carries to the next level.
inline Ref reduce_tree(std::vector<Gate>& gates, std::vector<Ref> refs, GateKind kind) {
  while (refs.size() > 1) {
    std::vector<Ref> next;
    next.reserve(refs.size() / 2 + 1);
    std::size_t i = 0;
    for (; i + 1 < refs.size(); i += 2) {
      gates.push_back(Gate::binary(kind, refs[i], refs[i + 1]));
      next.push_back(Ref::gate(static_cast<std::uint32_t>(gates.size() - 1)));
    }
    if (i < refs.size()) next.push_back(refs[i]);
    refs = std::move(next);
  }
  return refs.front();
}

}  // namespace detail

// Comparator that is true iff the dataset equals `pattern`. Per bit, one
// compare gate: NOT for a 0 bit, fused XNOR (pass-through) for a 1 bit; then
// a balanced AND tree. Gate count is 2d-1 and depth 1+ceil(log2 d) for every
// pattern of width d.
inline Criterion equality_criterion(const Dataset& pattern) {
  const std::uint32_t d = pattern.width();
  if (d == 0) throw InvalidParameter("equality pattern must be nonempty");
  std::vector<Gate> gates;
  gates.reserve(2 * static_cast<std::size_t>(d) - 1);
  std::vector<Ref> matches;
  matches.reserve(d);
  for (std::uint32_t i = 0; i < d; ++i) {
    const GateKind kind = pattern.bit(i) ? GateKind::Xnor : GateKind::Not;
    gates.push_back(Gate::unary(kind, Ref::input(i)));
    matches.push_back(Ref::gate(static_cast<std::uint32_t>(gates.size() - 1)));
  }
  const Ref out = detail::reduce_tree(gates, std::move(matches), GateKind::And);
  return Criterion(d, std::move(gates), out);
}

// A literal in a CNF clause: input bit `var`, optionally negated.
struct Literal {
  std::uint32_t var = 0;
  bool negated = false;
};

// CNF circuit: an OR tree per clause, NOT gates for negative literals (shared
// per variable), and an AND tree over the clauses. A clause with a single
// literal contributes no OR gate; a criterion with zero clauses is the empty
// conjunction, expressed as one tautology gate XNOR(x0, x0).
inline Criterion cnf_criterion(const std::vector<std::vector<Literal>>& clauses,
                               std::uint32_t width) {
  if (width == 0) throw InvalidParameter("cnf width must be >= 1");
  std::vector<Gate> gates;
  std::unordered_map<std::uint32_t, Ref> negations;
  auto literal_ref = [&](const Literal& lit) -> Ref {
    if (lit.var >= width) {
      throw InvalidParameter("literal x" + std::to_string(lit.var) +
                             " out of range for width " + std::to_string(width));
    }
    if (!lit.negated) return Ref::input(lit.var);
    auto it = negations.find(lit.var);
    if (it != negations.end()) return it->second;
    gates.push_back(Gate::unary(GateKind::Not, Ref::input(lit.var)));
    const Ref r = Ref::gate(static_cast<std::uint32_t>(gates.size() - 1));
    negations.emplace(lit.var, r);
    return r;
  };

  if (clauses.empty()) {
    gates.push_back(Gate::binary(GateKind::Xnor, Ref::input(0), Ref::input(0)));
    return Criterion(width, std::move(gates), Ref::gate(0));
  }

  std::vector<Ref> clause_refs;
  clause_refs.reserve(clauses.size());
  for (std::size_t ci = 0; ci < clauses.size(); ++ci) {
    const auto& clause = clauses[ci];
    if (clause.empty()) {
      throw InvalidParameter("clause " + std::to_string(ci) + " is empty");
    }
    std::vector<Ref> lits;
    lits.reserve(clause.size());
    for (const Literal& lit : clause) lits.push_back(literal_ref(lit));
    clause_refs.push_back(detail::reduce_tree(gates, std::move(lits), GateKind::Or));
  }
  const Ref out = detail::reduce_tree(gates, std::move(clause_refs), GateKind::And);
  return Criterion(width, std::move(gates), out);
}

namespace detail {

struct LineCursor {
  std::string_view text;
  std::size_t line_no = 0;

  // next non-blank line, stripped of surrounding whitespace; empty when done
  std::string_view next() {
    while (!text.empty()) {
      const std::size_t nl = text.find('\n');
      std::string_view line = text.substr(0, nl);
      text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
      ++line_no;
      while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) line.remove_prefix(1);
      while (!line.empty() &&
             (line.back() == ' ' || line.back() == '\t' || line.back() == '\r')) {
        line.remove_suffix(1);
      }
      if (!line.empty()) return line;
    }
    return {};
  }
};

[[noreturn]] inline void parse_fail(std::size_t line_no, const std::string& what) {
  throw FormatError("line " + std::to_string(line_no) + ": " + what);
}

inline std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline bool parse_u32(std::string_view s, std::uint32_t& out) {
  if (s.empty() || s.size() > 10) return false;
  std::uint64_t v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
    v = v * 10 + static_cast<std::uint64_t>(c - '0');
  }
  if (v > 0xFFFFFFFFull) return false;
  out = static_cast<std::uint32_t>(v);
  return true;
}

}  // namespace detail

// Line-oriented criterion text:
//   criterion d=<width>
//   g<i> = <KIND> <ref> [<ref>]     with ref = x<j> or g<j>
//   out = <ref>
// Gates must appear as g0, g1, ... in order and may reference inputs and
// earlier gates only. The fused pass-through compare gate serializes as a
// single-operand XNOR.
inline Criterion parse_criterion(std::string_view text) {
  detail::LineCursor cursor{text};

  std::string_view header = cursor.next();
  if (header.empty()) throw FormatError("line 1: missing 'criterion d=<width>' header");
  auto header_tokens = detail::split_tokens(header);
  std::uint32_t width = 0;
  if (header_tokens.size() != 2 || header_tokens[0] != "criterion" ||
      !header_tokens[1].starts_with("d=") ||
      !detail::parse_u32(header_tokens[1].substr(2), width) || width == 0) {
    detail::parse_fail(cursor.line_no, "expected 'criterion d=<width>'");
  }

  std::vector<Gate> gates;
  auto parse_ref = [&](std::string_view tok, std::size_t line_no) -> Ref {
    std::uint32_t idx = 0;
    if (tok.size() < 2 || !detail::parse_u32(tok.substr(1), idx)) {
      detail::parse_fail(line_no, "bad reference '" + std::string(tok) + "'");
    }
    if (tok[0] == 'x') {
      if (idx >= width) {
        detail::parse_fail(line_no, "input x" + std::to_string(idx) +
                                        " out of range for width " + std::to_string(width));
      }
      return Ref::input(idx);
    }
    if (tok[0] == 'g') {
      if (idx >= gates.size()) {
        detail::parse_fail(line_no, "g" + std::to_string(idx) +
                                        " references a gate that is not defined yet");
      }
      return Ref::gate(idx);
    }
    detail::parse_fail(line_no, "bad reference '" + std::string(tok) + "'");
  };

  Ref output{};
  bool have_output = false;
  for (;;) {
    std::string_view line = cursor.next();
    if (line.empty()) break;
    const std::size_t line_no = cursor.line_no;
    auto tokens = detail::split_tokens(line);
    if (have_output) detail::parse_fail(line_no, "content after 'out' line");
    if (tokens[0] == "out") {
      if (tokens.size() != 3 || tokens[1] != "=") {
        detail::parse_fail(line_no, "expected 'out = <ref>'");
      }
      output = parse_ref(tokens[2], line_no);
      have_output = true;
      continue;
    }
    // gate line
    if (tokens.size() < 4 || tokens.size() > 5 || tokens[1] != "=") {
      detail::parse_fail(line_no, "expected 'g<i> = <KIND> <ref> [<ref>]'");
    }
    std::uint32_t gate_idx = 0;
    if (tokens[0].size() < 2 || tokens[0][0] != 'g' ||
        !detail::parse_u32(tokens[0].substr(1), gate_idx)) {
      detail::parse_fail(line_no, "bad gate name '" + std::string(tokens[0]) + "'");
    }
    if (gate_idx != gates.size()) {
      detail::parse_fail(line_no, "expected g" + std::to_string(gates.size()) +
                                      ", got g" + std::to_string(gate_idx));
    }
    GateKind kind;
    if (tokens[2] == "AND") {
      kind = GateKind::And;
    } else if (tokens[2] == "OR") {
      kind = GateKind::Or;
    } else if (tokens[2] == "XOR") {
      kind = GateKind::Xor;
    } else if (tokens[2] == "NOT") {
      kind = GateKind::Not;
    } else if (tokens[2] == "XNOR") {
      kind = GateKind::Xnor;
    } else {
      detail::parse_fail(line_no, "unknown gate kind '" + std::string(tokens[2]) + "'");
    }
    const std::uint8_t arity = tokens.size() == 5 ? 2 : 1;
    if (!detail::arity_allowed(kind, arity)) {
      detail::parse_fail(line_no, std::string("wrong operand count for ") +
                                      detail::gate_kind_name(kind));
    }
    const Ref a = parse_ref(tokens[3], line_no);
    if (arity == 2) {
      gates.push_back(Gate::binary(kind, a, parse_ref(tokens[4], line_no)));
    } else {
      gates.push_back(Gate::unary(kind, a));
    }
  }
  if (!have_output) {
    detail::parse_fail(cursor.line_no, "missing 'out = <ref>' line");
  }
  return Criterion(width, std::move(gates), output);
}

inline std::string serialize_criterion(const Criterion& criterion) {
  std::ostringstream out;
  auto ref_name = [](Ref r) {
    return (r.kind == Ref::Kind::Input ? "x" : "g") + std::to_string(r.index);
  };
  out << "criterion d=" << criterion.input_width() << "\n";
  const auto& gates = criterion.gates();
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const Gate& g = gates[i];
    out << "g" << i << " = " << detail::gate_kind_name(g.kind) << " " << ref_name(g.in[0]);
    if (g.arity == 2) out << " " << ref_name(g.in[1]);
    out << "\n";
  }
  out << "out = " << ref_name(criterion.output()) << "\n";
  return out.str();
}

}  // namespace geb
