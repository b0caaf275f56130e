#include "opstrict/operad.hpp"

#include <numeric>
#include <sstream>
#include <unordered_map>

#include "lexer.hpp"

namespace opstrict {

namespace {

std::string key_string(const TabulatedOperad& P, OpId p,
                       std::span<const OpId> args) {
  std::string s = P.name(p) + " (";
  for (auto a : args) s += " " + P.name(a);
  return s + " )";
}

}  // namespace

TabulatedOperad::TabulatedOperad(std::size_t arity_cap,
                                 std::vector<OpSymbol> elements, OpId identity,
                                 CompTable comp)
    : arity_cap_(arity_cap),
      elements_(std::move(elements)),
      by_arity_(arity_cap + 1),
      identity_(identity),
      comp_(std::move(comp)) {
  std::unordered_map<std::string, std::size_t> seen;
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    const auto& e = elements_[i];
    if (!seen.emplace(e.name, i).second)
      throw Error("duplicate operad element '" + e.name + "'");
    if (e.arity > arity_cap_)
      throw CapExceeded("element '" + e.name + "' has arity " +
                        std::to_string(e.arity) + " above cap " +
                        std::to_string(arity_cap_));
    by_arity_[e.arity].push_back(OpId(i));
  }
  if (identity_.value >= elements_.size() || arity(identity_) != 1)
    throw Error("operad identity must be an element of arity 1");

  for (const auto& [key, result] : comp_) {
    if (key.empty() || key[0].value >= elements_.size())
      throw Error("composition entry with unknown head");
    for (auto k : key)
      if (k.value >= elements_.size())
        throw Error("composition entry mentions an unknown element");
    if (result.value >= elements_.size())
      throw Error("composition entry with unknown result");
    std::span<const OpId> args(key.begin() + 1, key.end());
    if (args.size() != arity(key[0]))
      throw ArityMismatch("composition " + key_string(*this, key[0], args) +
                          " has the wrong number of arguments");
    std::size_t total = total_arity(*this, args);
    if (total > arity_cap_)
      throw CapExceeded("composition " + key_string(*this, key[0], args) +
                        " is above the arity cap");
    if (arity(result) != total)
      throw ArityMismatch("composition " + key_string(*this, key[0], args) +
                          " = " + name(result) + " has the wrong arity");
  }

  // Entries forced by the unit laws.
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    OpId p(i);
    comp_.try_emplace({identity_, p}, p);
    std::vector<OpId> key(arity(p) + 1, identity_);
    key[0] = p;
    comp_.try_emplace(std::move(key), p);
  }

  for (std::size_t i = 0; i < elements_.size(); ++i) {
    OpId p(i);
    for_each_arg_tuple(*this, arity(p), arity_cap_,
                       [&](std::span<const OpId> args) {
                         std::vector<OpId> key{p};
                         key.insert(key.end(), args.begin(), args.end());
                         if (!comp_.contains(key))
                           throw UndefinedEntry("composition " +
                                                key_string(*this, p, args) +
                                                " is missing from the table");
                       });
  }
}

std::span<const OpId> TabulatedOperad::of_arity(std::size_t n) const {
  if (n > arity_cap_) return {};
  return by_arity_[n];
}

std::optional<OpId> TabulatedOperad::find(std::string_view name) const {
  for (std::size_t i = 0; i < elements_.size(); ++i)
    if (elements_[i].name == name) return OpId(i);
  return std::nullopt;
}

OpId TabulatedOperad::compose(OpId p, std::span<const OpId> args) const {
  if (args.size() != arity(p))
    throw ArityMismatch("cannot compose " + name(p) + " of arity " +
                        std::to_string(arity(p)) + " with " +
                        std::to_string(args.size()) + " arguments");
  std::size_t total = total_arity(*this, args);
  if (total > arity_cap_)
    throw CapExceeded("composite " + key_string(*this, p, args) +
                      " has arity " + std::to_string(total) + " above cap " +
                      std::to_string(arity_cap_));
  std::vector<OpId> key{p};
  key.insert(key.end(), args.begin(), args.end());
  return comp_.at(key);
}

bool TabulatedOperad::operator==(const TabulatedOperad& other) const {
  return arity_cap_ == other.arity_cap_ && elements_ == other.elements_ &&
         identity_ == other.identity_ && comp_ == other.comp_;
}

std::size_t total_arity(const TabulatedOperad& P, std::span<const OpId> ops) {
  std::size_t total = 0;
  for (auto q : ops) total += P.arity(q);
  return total;
}

void for_each_arg_tuple(const TabulatedOperad& P, std::size_t n,
                        std::size_t budget,
                        const std::function<void(std::span<const OpId>)>& fn) {
  std::vector<OpId> tuple(n);
  // Visit in OpId order rather than grouped by arity.
  std::vector<OpId> all;
  for (std::size_t i = 0; i < P.size(); ++i) all.push_back(OpId(i));
  auto rec_ordered = [&](auto&& self, std::size_t i, std::size_t left) -> void {
    if (i == n) {
      fn(tuple);
      return;
    }
    for (auto q : all) {
      std::size_t k = P.arity(q);
      if (k > left) continue;
      tuple[i] = q;
      self(self, i + 1, left - k);
    }
  };
  rec_ordered(rec_ordered, 0, budget);
}

CheckReport check_operad_laws(const TabulatedOperad& P) {
  CheckReport report;
  const std::size_t N = P.arity_cap();
  const OpId one = P.identity();

  for (std::size_t i = 0; i < P.size(); ++i) {
    OpId p(i);
    ++report.instances;
    std::vector<OpId> one_arg{p};
    if (P.compose(one, one_arg) != p)
      report.fail("operad.left_unit", P.name(p), P.name(p),
                  P.name(P.compose(one, one_arg)));
    std::vector<OpId> ones(P.arity(p), one);
    ++report.instances;
    if (P.compose(p, ones) != p)
      report.fail("operad.right_unit", P.name(p), P.name(p),
                  P.name(P.compose(p, ones)));
  }

  // Associativity: (p o ps) o qs == p o (ps_i o qs_i).
  for (std::size_t i = 0; i < P.size(); ++i) {
    OpId p(i);
    for_each_arg_tuple(P, P.arity(p), N, [&](std::span<const OpId> ps) {
      const std::size_t n = ps.size();
      std::vector<std::vector<OpId>> qs(n);
      auto rec = [&](auto&& self, std::size_t j, std::size_t left) -> void {
        if (j == n) {
          ++report.instances;
          std::vector<OpId> flat = concat<OpTag>(qs);
          OpId lhs = P.compose(P.compose(p, ps), flat);
          std::vector<OpId> inner(n);
          for (std::size_t k = 0; k < n; ++k) inner[k] = P.compose(ps[k], qs[k]);
          OpId rhs = P.compose(p, inner);
          if (lhs != rhs) {
            std::string inst = P.name(p) + " (";
            for (std::size_t k = 0; k < n; ++k) {
              inst += " " + P.name(ps[k]) + "[";
              for (auto q : qs[k]) inst += " " + P.name(q);
              inst += " ]";
            }
            report.fail("operad.associativity", inst + " )", P.name(rhs),
                        P.name(lhs));
          }
          return;
        }
        for_each_arg_tuple(P, P.arity(ps[j]), left,
                           [&](std::span<const OpId> q) {
                             qs[j].assign(q.begin(), q.end());
                             self(self, j + 1, left - total_arity(P, q));
                           });
      };
      rec(rec, 0, N);
    });
  }
  return report;
}

// ---------------------------------------------------------------------------

TabulatedOperad terminal_operad(std::size_t arity_cap) {
  if (arity_cap < 1) throw CapExceeded("terminal operad needs arity cap >= 1");
  std::vector<OpSymbol> elems;
  for (std::size_t n = 0; n <= arity_cap; ++n)
    elems.push_back({"t" + std::to_string(n), n});
  CompTable table;
    for (std::size_t n = 0; n <= arity_cap; ++n) {
      std::vector<OpId> key(n + 1);
      key[0] = OpId(n);
      auto rec = [&](auto&& self, std::size_t i, std::size_t total) -> void {
        if (i == n) {
          table[key] = OpId(total);
          return;
        }
        for (std::size_t k = 0; k + total <= arity_cap; ++k) {
          key[i + 1] = OpId(k);
          self(self, i + 1, total + k);
        }
      };
      rec(rec, 0, 0);
  }
  return TabulatedOperad(arity_cap, std::move(elems), OpId(1), std::move(table));
}

TabulatedOperad cyclic_unary_operad(std::size_t order) {
  if (order == 0) throw Error("cyclic operad needs a positive order");
  std::vector<OpSymbol> elems;
  for (std::size_t i = 0; i < order; ++i)
    elems.push_back({"g" + std::to_string(i), 1});
  CompTable table;
  for (std::size_t i = 0; i < order; ++i)
    for (std::size_t j = 0; j < order; ++j)
      table[{OpId(i), OpId(j)}] = OpId((i + j) % order);
  return TabulatedOperad(1, std::move(elems), OpId(0), std::move(table));
}

namespace {

// Binary trees in prefix form over {m, x} with exactly `leaves` leaves.
std::vector<std::string> binary_shapes(std::size_t leaves) {
  if (leaves == 1) return {"x"};
  std::vector<std::string> out;
  for (std::size_t left = 1; left < leaves; ++left)
    for (const auto& l : binary_shapes(left))
      for (const auto& r : binary_shapes(leaves - left))
        out.push_back("m" + l + r);
  return out;
}

std::string graft_prefix(const std::string& p,
                         const std::vector<std::string>& args) {
  std::string out;
  std::size_t k = 0;
  for (char c : p) {
    if (c == 'x')
      out += args[k++];
    else
      out.push_back(c);
  }
  return out;
}

}  // namespace

TabulatedOperad free_binary_operad(std::size_t arity_cap) {
  if (arity_cap < 1) throw CapExceeded("free operad needs arity cap >= 1");
  std::vector<OpSymbol> elems;
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t n = 1; n <= arity_cap; ++n)
    for (auto& s : binary_shapes(n)) {
      index[s] = elems.size();
      elems.push_back({s, n});
    }
  CompTable table;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    const std::size_t n = elems[i].arity;
    std::vector<std::size_t> pick(n);
    auto rec = [&](auto&& self, std::size_t j, std::size_t total) -> void {
      if (j == n) {
        std::vector<OpId> key{OpId(i)};
        std::vector<std::string> args;
        for (auto a : pick) {
          key.push_back(OpId(a));
          args.push_back(elems[a].name);
        }
        table[key] = OpId(index.at(graft_prefix(elems[i].name, args)));
        return;
      }
      for (std::size_t a = 0; a < elems.size(); ++a) {
        if (total + elems[a].arity > arity_cap) continue;
        pick[j] = a;
        self(self, j + 1, total + elems[a].arity);
      }
    };
    rec(rec, 0, 0);
  }
  return TabulatedOperad(arity_cap, std::move(elems), OpId(0),
                         std::move(table));
}

// ---------------------------------------------------------------------------
// .operad format

TabulatedOperad parse_operad(std::string_view text) {
  using detail::LineCursor;
  auto lines = detail::split_lines(detail::tokenize(text, "():="));
  if (lines.empty()) throw ParseError("empty operad file", 1, 1);

  std::optional<std::size_t> cap;
  std::vector<OpSymbol> elems;
  std::unordered_map<std::string, OpId> ids;
  std::optional<OpId> identity;
  std::vector<std::pair<std::vector<detail::Token>, detail::Token>> pending;

  auto lookup = [&](const detail::Token& t) {
    auto it = ids.find(t.text);
    if (it == ids.end())
      throw ParseError("unknown operad element '" + t.text + "'", t.line,
                       t.column);
    return it->second;
  };

  for (const auto& line : lines) {
    LineCursor cur(line);
    const auto& kw = cur.next();
    if (kw.text == "arity_cap") {
      if (cap) throw ParseError("duplicate arity_cap", kw.line, kw.column);
      cap = cur.number();
    } else if (!cap) {
      throw ParseError("operad file must start with 'arity_cap N'", kw.line,
                       kw.column);
    } else if (kw.text == "elem") {
      const auto& id = cur.next();
      cur.expect(":");
      std::size_t arity = cur.number();
      if (ids.contains(id.text))
        throw ParseError("duplicate element '" + id.text + "'", id.line,
                         id.column);
      if (arity > *cap)
        throw ParseError("element arity above the cap", id.line, id.column);
      ids.emplace(id.text, OpId(elems.size()));
      elems.push_back({id.text, arity});
    } else if (kw.text == "identity") {
      identity = lookup(cur.next());
    } else if (kw.text == "comp") {
      std::vector<detail::Token> key{cur.next()};
      auto args = cur.parenthesized();
      key.insert(key.end(), args.begin(), args.end());
      cur.expect("=");
      pending.emplace_back(std::move(key), cur.next());
    } else {
      throw ParseError("unknown directive '" + kw.text + "'", kw.line,
                       kw.column);
    }
    cur.expect_end();
  }
  if (!identity) throw ParseError("missing 'identity' line", lines.back()[0].line, 1);

  CompTable table;
  for (const auto& [key_tokens, result] : pending) {
    std::vector<OpId> key;
    for (const auto& t : key_tokens) key.push_back(lookup(t));
    OpId r = lookup(result);
    if (!table.emplace(key, r).second)
      throw ParseError("duplicate composition entry", key_tokens[0].line,
                       key_tokens[0].column);
  }
  return TabulatedOperad(*cap, std::move(elems), *identity, std::move(table));
}

std::string print_operad(const TabulatedOperad& P) {
  std::ostringstream out;
  out << "arity_cap " << P.arity_cap() << "\n";
  for (const auto& e : P.elements())
    out << "elem " << e.name << " : " << e.arity << "\n";
  out << "identity " << P.name(P.identity()) << "\n";
  for (const auto& [key, result] : P.table()) {
    out << "comp " << P.name(key[0]) << " (";
    for (std::size_t i = 1; i < key.size(); ++i) out << " " << P.name(key[i]);
    out << " ) = " << P.name(result) << "\n";
  }
  return out.str();
}

}  // namespace opstrict
