#include "lyapcert/reduction.hpp"

#include <fstream>
#include <istream>
#include <sstream>

namespace lyapcert {

namespace {

// literal value under an assignment
bool literal_true(const Literal& l, const Assignment& a) {
  bool v = a.bits[l.var - 1];
  return l.negated ? !v : v;
}

bool clause_exactly_one(const Clause& c, const Assignment& a) {
  int t = 0;
  for (const auto& l : c.lits) t += literal_true(l, a) ? 1 : 0;
  return t == 1;
}

// x1 is the least significant bit of the counter
Assignment assignment_from_counter(uint64_t counter, int nvars) {
  Assignment a;
  a.bits.resize(nvars);
  for (int i = 0; i < nvars; ++i) a.bits[i] = (counter >> i) & 1;
  return a;
}

}  // namespace

CnfInstance parse_cnf(std::istream& in) {
  using Kind = CnfParseError::Kind;
  std::string line;
  int lineno = 0;
  CnfInstance inst;
  bool have_header = false;
  int declared_clauses = 0;

  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;  // blank line
    if (first == "c") continue;    // comment

    if (!have_header) {
      if (first != "p")
        throw CnfParseError(Kind::bad_header, lineno, "expected header 'p eot3 <nvars> <nclauses>'");
      std::string fmt;
      long nv = 0, nc = 0;
      if (!(ls >> fmt >> nv >> nc) || fmt != "eot3" || nv < 1 || nc < 1)
        throw CnfParseError(Kind::bad_header, lineno, "malformed header: " + line);
      std::string extra;
      if (ls >> extra)
        throw CnfParseError(Kind::bad_header, lineno, "trailing tokens in header");
      inst.nvars = static_cast<int>(nv);
      declared_clauses = static_cast<int>(nc);
      have_header = true;
      continue;
    }

    // clause line; `first` is its first token
    std::vector<long> vals;
    std::istringstream cs(line);
    long v;
    while (cs >> v) vals.push_back(v);
    if (!cs.eof())
      throw CnfParseError(Kind::bad_clause, lineno, "non-integer token in clause");
    if (vals.empty()) continue;
    if (vals.back() != 0)
      throw CnfParseError(Kind::bad_clause, lineno, "clause not terminated by 0");
    vals.pop_back();
    if (vals.size() != 3)
      throw CnfParseError(Kind::bad_arity, lineno,
                          "clause has " + std::to_string(vals.size()) + " literals, expected 3");
    Clause cl;
    for (int i = 0; i < 3; ++i) {
      long lit = vals[i];
      if (lit == 0 || std::abs(lit) > inst.nvars)
        throw CnfParseError(Kind::index_out_of_range, lineno,
                            "variable " + std::to_string(std::abs(lit)) + " out of range");
      cl.lits[i] = Literal{static_cast<int>(std::abs(lit)), lit < 0};
    }
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        if (cl.lits[i].var == cl.lits[j].var)
          throw CnfParseError(Kind::repeated_variable, lineno,
                              "variable " + std::to_string(cl.lits[i].var) + " repeated in clause");
    inst.clauses.push_back(cl);
  }

  if (!have_header) throw CnfParseError(Kind::bad_header, lineno, "missing header");
  if (static_cast<int>(inst.clauses.size()) != declared_clauses)
    throw CnfParseError(Kind::bad_clause, lineno,
                        "header declared " + std::to_string(declared_clauses) + " clauses, found " +
                            std::to_string(inst.clauses.size()));
  return inst;
}

CnfInstance parse_cnf_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open CNF file: " + path);
  return parse_cnf(in);
}

std::optional<Assignment> exactly_one_true_satisfiable(const CnfInstance& inst) {
  if (inst.nvars > kExhaustiveVarLimit)
    throw std::invalid_argument("instance exceeds the exhaustive search bound");
  const uint64_t total = uint64_t{1} << inst.nvars;
  for (uint64_t counter = 0; counter < total; ++counter) {
    Assignment a = assignment_from_counter(counter, inst.nvars);
    bool ok = true;
    for (const auto& c : inst.clauses)
      if (!clause_exactly_one(c, a)) {
        ok = false;
        break;
      }
    if (ok) return a;
  }
  return std::nullopt;
}

QuarticWithSquares build_quartic_with_squares(const CnfInstance& inst) {
  const int n = inst.nvars;
  QuarticWithSquares out{Polynomial::zero(n), {}};

  for (int i = 0; i < n; ++i) {
    // xi (1 - xi)
    Polynomial xi = Polynomial::variable(n, i);
    out.squares.push_back(xi * (Polynomial::constant(n, 1) - xi));
  }
  for (const auto& c : inst.clauses) {
    // l1 + l2 + l3 - 1
    Polynomial s = Polynomial::constant(n, -1);
    for (const auto& l : c.lits) {
      Polynomial xv = Polynomial::variable(n, l.var - 1);
      s += l.negated ? Polynomial::constant(n, 1) - xv : xv;
    }
    out.squares.push_back(s);
  }
  for (const auto& q : out.squares) out.p += q * q;
  return out;
}

Polynomial build_quartic(const CnfInstance& inst) {
  return build_quartic_with_squares(inst).p;
}

std::vector<Assignment> zeros_on_cube(const Polynomial& p) {
  const int n = p.nvars();
  if (n > kExhaustiveVarLimit)
    throw std::invalid_argument("polynomial exceeds the exhaustive search bound");

  // On {0,1}^n a monomial evaluates to 1 exactly when all of its support
  // variables are set, so each term reduces to a bitmask test.
  std::vector<std::pair<uint64_t, Rational>> masked;
  masked.reserve(p.terms().size());
  for (const auto& [m, c] : p.terms()) {
    uint64_t mask = 0;
    for (int i = 0; i < n; ++i)
      if (m.exps[i] > 0) mask |= uint64_t{1} << i;
    masked.emplace_back(mask, c);
  }

  std::vector<Assignment> zeros;
  const uint64_t total = uint64_t{1} << n;
  for (uint64_t counter = 0; counter < total; ++counter) {
    Rational acc = 0;
    for (const auto& [mask, c] : masked)
      if ((counter & mask) == mask) acc += c;
    if (acc == 0) zeros.push_back(assignment_from_counter(counter, n));
  }
  return zeros;
}

VectorField gradient_system(const Polynomial& V) {
  std::vector<Polynomial> comps;
  comps.reserve(V.nvars());
  for (const auto& g : V.gradient()) comps.push_back(-g);
  return make_vector_field(std::move(comps));
}

}  // namespace lyapcert
