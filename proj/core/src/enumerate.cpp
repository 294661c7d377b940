#include "gradekit/enumerate.hpp"

#include <algorithm>

#include "gradekit/error.hpp"

namespace gradekit {
namespace {

std::set<std::string> term_free(const Term& t) {
  std::set<std::string> out;
  std::vector<const Term*> todo{&t};
  while (!todo.empty()) {
    const Term* cur = todo.back();
    todo.pop_back();
    if (cur->kind == Term::Kind::var)
      out.insert(cur->var);
    else
      for (const auto& a : cur->args) todo.push_back(&a);
  }
  return out;
}

std::set<std::string> set_union(const std::set<std::string>& a, const std::set<std::string>& b) {
  std::set<std::string> out = a;
  out.insert(b.begin(), b.end());
  return out;
}

} // namespace

FormulaEnumerator::FormulaEnumerator(const Signature& sig, std::vector<std::string> free_vars,
                                     const EnumBounds& bounds)
    : sig_(sig), base_(std::move(free_vars)), bounds_(bounds) {
  // pick a quantified-variable prefix that cannot collide with the base
  // variables or signature symbols
  quant_prefix_ = "u";
  auto clashes = [&] {
    for (int i = 1; i <= bounds_.max_quant_depth + 1; ++i) {
      std::string v = quant_prefix_ + std::to_string(i);
      if (std::find(base_.begin(), base_.end(), v) != base_.end()) return true;
      if (sig_.pred_index(v) || sig_.func_index(v)) return true;
    }
    return false;
  };
  while (clashes()) quant_prefix_ += "u";
}

std::string FormulaEnumerator::scope_var(int depth) const {
  return quant_prefix_ + std::to_string(depth);
}

const std::vector<Term>& FormulaEnumerator::terms_at(int scope) {
  auto it = terms_.find(scope);
  if (it != terms_.end()) return it->second;

  std::vector<Term> terms;
  for (const auto& v : base_) terms.push_back(Term::make_var(v));
  for (int d = 1; d <= scope; ++d) terms.push_back(Term::make_var(scope_var(d)));

  std::size_t layer_begin = 0;
  for (int depth = 1; depth <= bounds_.term_depth; ++depth) {
    const std::size_t layer_end = terms.size();
    for (std::size_t f = 0; f < sig_.functions.size(); ++f) {
      const int arity = sig_.functions[f].arity;
      std::vector<std::size_t> pick(static_cast<std::size_t>(arity), 0);
      while (true) {
        // require at least one argument from the newest layer so each
        // application is generated exactly once
        bool fresh = arity == 0 ? depth == 1 : false;
        for (std::size_t i : pick) fresh = fresh || i >= layer_begin;
        if (fresh) {
          std::vector<Term> args;
          args.reserve(pick.size());
          for (std::size_t i : pick) args.push_back(terms[i]);
          terms.push_back(Term::make_app(static_cast<int>(f), std::move(args)));
        }
        // advance mixed-radix pick over [0, layer_end)
        int i = arity - 1;
        for (; i >= 0; --i) {
          if (++pick[static_cast<std::size_t>(i)] < layer_end) break;
          pick[static_cast<std::size_t>(i)] = 0;
        }
        if (i < 0) break;
      }
    }
    layer_begin = layer_end;
    if (layer_begin == terms.size()) break; // nothing new, stop early
  }
  return terms_.emplace(scope, std::move(terms)).first->second;
}

void FormulaEnumerator::push(Cell& cell, FormulaPtr f, std::set<std::string> free) {
  if (++generated_ > bounds_.cap)
    throw EnumerationOverflow("formula enumeration exceeded cap of " +
                              std::to_string(bounds_.cap));
  cell.formulas.push_back(std::move(f));
  cell.frees.push_back(std::move(free));
}

const FormulaEnumerator::Cell& FormulaEnumerator::cell_at(int scope, int q, int c) {
  const Key key{scope, q, c};
  auto it = cells_.find(key);
  if (it != cells_.end()) return it->second;
  it = cells_.emplace(key, Cell{}).first;
  Cell cell;

  if (q == 0 && c == 0) {
    const auto& terms = terms_at(scope);
    for (std::size_t p = 0; p < sig_.predicates.size(); ++p) {
      const int arity = sig_.predicates[p].arity;
      std::vector<std::size_t> pick(static_cast<std::size_t>(arity), 0);
      bool more = !terms.empty() || arity == 0;
      while (more) {
        std::vector<Term> args;
        std::set<std::string> free;
        for (std::size_t i : pick) {
          args.push_back(terms[i]);
          free = set_union(free, term_free(terms[i]));
        }
        push(cell, mk_pred(static_cast<int>(p), std::move(args)), std::move(free));
        int i = arity - 1;
        for (; i >= 0; --i) {
          if (++pick[static_cast<std::size_t>(i)] < terms.size()) break;
          pick[static_cast<std::size_t>(i)] = 0;
        }
        more = i >= 0;
      }
    }
    if (bounds_.identity) {
      const auto& terms = terms_at(scope);
      for (std::size_t i = 0; i < terms.size(); ++i)
        for (std::size_t j = i; j < terms.size(); ++j)
          push(cell, mk_eq(terms[i], terms[j]),
               set_union(term_free(terms[i]), term_free(terms[j])));
    }
  }

  // negations (skip double negation)
  if (c > 0) {
    const Cell& inner = cell_at(scope, q, c - 1);
    for (std::size_t i = 0; i < inner.formulas.size(); ++i)
      if (inner.formulas[i]->kind != Formula::Kind::lnot)
        push(cell, mk_not(inner.formulas[i]), inner.frees[i]);
  }

  // binary connectives
  if (c > 0) {
    for (int c1 = 0; c1 <= c - 1; ++c1) {
      const int c2 = c - 1 - c1;
      for (int q1 = 0; q1 <= q; ++q1) {
        for (int q2 = 0; q2 <= q; ++q2) {
          if (std::max(q1, q2) != q) continue;
          const Cell& lhs = cell_at(scope, q1, c1);
          const Cell& rhs = cell_at(scope, q2, c2);
          const bool same = q1 == q2 && c1 == c2;
          // implications: ordered pairs, skip a -> a
          for (std::size_t i = 0; i < lhs.formulas.size(); ++i)
            for (std::size_t j = 0; j < rhs.formulas.size(); ++j) {
              if (same && i == j) continue;
              push(cell, mk_implies(lhs.formulas[i], rhs.formulas[j]),
                   set_union(lhs.frees[i], rhs.frees[j]));
            }
          // commutative connectives: one orientation per unordered pair
          const bool ordered_cells = std::tie(q1, c1) < std::tie(q2, c2);
          if (ordered_cells || same) {
            for (std::size_t i = 0; i < lhs.formulas.size(); ++i) {
              const std::size_t jstart = same ? i + 1 : 0;
              for (std::size_t j = jstart; j < rhs.formulas.size(); ++j) {
                auto free = set_union(lhs.frees[i], rhs.frees[j]);
                push(cell, mk_and(lhs.formulas[i], rhs.formulas[j]), free);
                push(cell, mk_or(lhs.formulas[i], rhs.formulas[j]), free);
                push(cell, mk_iff(lhs.formulas[i], rhs.formulas[j]), free);
              }
            }
          }
        }
      }
    }
  }

  // quantifiers (skip vacuous binders)
  if (q > 0) {
    const std::string var = scope_var(scope + 1);
    const Cell& body = cell_at(scope + 1, q - 1, c);
    for (std::size_t i = 0; i < body.formulas.size(); ++i) {
      if (!body.frees[i].count(var)) continue;
      std::set<std::string> free = body.frees[i];
      free.erase(var);
      push(cell, mk_forall(var, body.formulas[i]), free);
      push(cell, mk_exists(var, body.formulas[i]), std::move(free));
    }
  }

  it->second = std::move(cell);
  return it->second;
}

const std::vector<FormulaPtr>& FormulaEnumerator::cell(int quant_depth, int connectives) {
  return cell_at(0, quant_depth, connectives).formulas;
}

void FormulaEnumerator::scan(const std::function<bool(const FormulaPtr&)>& fn) {
  for (int q = 0; q <= bounds_.max_quant_depth; ++q)
    for (int c = 0; c <= bounds_.max_connectives; ++c)
      for (const auto& f : cell(q, c))
        if (!fn(f)) return;
}

std::vector<FormulaPtr> enumerate_formulas(const Signature& sig,
                                           const std::vector<std::string>& free_vars,
                                           const EnumBounds& bounds, bool exact) {
  FormulaEnumerator en(sig, free_vars, bounds);
  std::set<std::string> want(free_vars.begin(), free_vars.end());
  std::vector<FormulaPtr> out;
  for (int q = 0; q <= bounds.max_quant_depth; ++q)
    for (int c = 0; c <= bounds.max_connectives; ++c)
      for (const auto& f : en.cell(q, c)) {
        if (exact && free_variables(*f) != want) continue;
        out.push_back(f);
      }
  return out;
}

} // namespace gradekit
