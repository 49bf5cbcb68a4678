#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace liesym {

/// Role tags take part in the canonical symbol order, in declaration order.
enum class Role : std::uint8_t {
  Independent,
  Dependent,
  Jet,
  Parameter,
  AnsatzUnknown,
  GroupParameter,
};

const char* role_name(Role role);

namespace detail {
struct SymbolData;
}

/// Interned symbol. Copies are a pointer; equality is identity.
///
/// Jet coordinates carry the base name of their dependent variable, the
/// derivative multi-index (one count per independent axis) and the axis names,
/// so `u_xy` is {name "u", orders {1,1}, axes {"x","y"}}. A dependent variable
/// is the jet coordinate with all-zero orders.
class Symbol {
 public:
  Symbol(Role role, const std::string& name);

  static Symbol jet(const std::string& name, const std::vector<int>& orders,
                    const std::vector<std::string>& axes);

  Role role() const;
  const std::string& name() const;
  const std::vector<int>& orders() const;
  const std::vector<std::string>& axes() const;
  int order() const;
  bool is_jet_like() const { return role() == Role::Dependent || role() == Role::Jet; }

  /// `u_xy` style.
  const std::string& display() const;
  /// `d(u, x, y)` style for jets, the plain name otherwise.
  std::string source() const;

  /// Same dependent variable with one more derivative along `axis`.
  Symbol derivative(std::size_t axis) const;

  friend bool operator==(const Symbol& a, const Symbol& b) { return a.data_ == b.data_; }
  friend std::strong_ordering operator<=>(const Symbol& a, const Symbol& b);

 private:
  explicit Symbol(const detail::SymbolData* data) : data_(data) {}
  static const detail::SymbolData* intern(Role role, const std::string& name,
                                          const std::vector<int>& orders,
                                          const std::vector<std::string>& axes);

  const detail::SymbolData* data_;
};

/// Graded-lex comparison of derivative multi-indices.
std::strong_ordering compare_multi_index(const std::vector<int>& a, const std::vector<int>& b);

}  // namespace liesym
