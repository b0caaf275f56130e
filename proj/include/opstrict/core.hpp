#pragma once

// Shared vocabulary: strong index types, tuple-keyed maps, error types and
// the check report every validator returns.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace opstrict {

template <class Tag>
struct Id {
  std::uint32_t value = 0;

  constexpr Id() = default;
  constexpr explicit Id(std::size_t v) : value(static_cast<std::uint32_t>(v)) {}
  constexpr auto operator<=>(const Id&) const = default;
};

struct OpTag {};
struct ObjTag {};
struct MorTag {};

using OpId = Id<OpTag>;
using ObjId = Id<ObjTag>;
using MorId = Id<MorTag>;

struct IdHash {
  template <class Tag>
  std::size_t operator()(Id<Tag> id) const noexcept {
    return std::hash<std::uint32_t>{}(id.value);
  }
};

// Hash and equality over any contiguous run of ids. Transparent so that maps
// keyed by std::vector can be probed with a span without allocating.
struct TupleHash {
  using is_transparent = void;
  template <class Tag>
  std::size_t operator()(std::span<const Id<Tag>> xs) const noexcept {
    std::uint64_t h = 1469598103934665603ull ^ xs.size();
    for (auto x : xs) {
      h ^= x.value + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
  template <class Tag>
  std::size_t operator()(const std::vector<Id<Tag>>& xs) const noexcept {
    return (*this)(std::span<const Id<Tag>>(xs));
  }
};

struct TupleEq {
  using is_transparent = void;
  template <class A, class B>
  bool operator()(const A& a, const B& b) const noexcept {
    return std::equal(std::begin(a), std::end(a), std::begin(b), std::end(b));
  }
};

template <class Tag, class V>
using TupleMap = std::unordered_map<std::vector<Id<Tag>>, V, TupleHash, TupleEq>;

// ---------------------------------------------------------------------------
// Errors

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CapExceeded : public Error {
 public:
  using Error::Error;
};

class ArityMismatch : public Error {
 public:
  using Error::Error;
};

class NotInvertible : public Error {
 public:
  using Error::Error;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class NoTwoCell : public Error {
 public:
  using Error::Error;
};

class NotStronglyRegular : public Error {
 public:
  using Error::Error;
};

class UndefinedEntry : public Error {
 public:
  using Error::Error;
};

class SearchBoundExceeded : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::string message, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " +
              message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// ---------------------------------------------------------------------------
// Check reports

struct CheckFailure {
  std::string check;     // operation / axiom that failed
  std::string instance;  // which instance
  std::string expected;
  std::string actual;
};

struct CheckReport {
  std::vector<CheckFailure> failures;
  std::size_t instances = 0;

  bool passed() const noexcept { return failures.empty(); }

  void fail(std::string check, std::string instance, std::string expected = {},
            std::string actual = {}) {
    failures.push_back({std::move(check), std::move(instance),
                        std::move(expected), std::move(actual)});
  }

  void merge(const CheckReport& other) {
    failures.insert(failures.end(), other.failures.begin(),
                    other.failures.end());
    instances += other.instances;
  }
};

template <class Tag>
std::vector<Id<Tag>> concat(std::span<const std::vector<Id<Tag>>> parts) {
  std::vector<Id<Tag>> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

}  // namespace opstrict
