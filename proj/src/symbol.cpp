#include "liesym/symbol.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <tuple>

namespace liesym {

namespace detail {

struct SymbolData {
  Role role;
  std::string name;
  std::vector<int> orders;
  std::vector<std::string> axes;
  std::string display;
  int order;
};

}  // namespace detail

namespace {

using Key = std::tuple<Role, std::string, std::vector<int>, std::vector<std::string>>;

struct Registry {
  std::mutex mutex;
  std::map<Key, std::unique_ptr<detail::SymbolData>> table;
};

Registry& registry() {
  static Registry r;
  return r;
}

std::string make_display(const std::string& name, const std::vector<int>& orders,
                         const std::vector<std::string>& axes) {
  std::string suffix;
  for (std::size_t i = 0; i < orders.size(); ++i) {
    for (int k = 0; k < orders[i]; ++k) suffix += axes[i];
  }
  return suffix.empty() ? name : name + "_" + suffix;
}

}  // namespace

const char* role_name(Role role) {
  switch (role) {
    case Role::Independent: return "independent";
    case Role::Dependent: return "dependent";
    case Role::Jet: return "jet";
    case Role::Parameter: return "parameter";
    case Role::AnsatzUnknown: return "ansatz-unknown";
    case Role::GroupParameter: return "group-parameter";
  }
  return "unknown";
}

const detail::SymbolData* Symbol::intern(Role role, const std::string& name,
                                         const std::vector<int>& orders,
                                         const std::vector<std::string>& axes) {
  auto& reg = registry();
  std::lock_guard lock(reg.mutex);
  Key key{role, name, orders, axes};
  auto it = reg.table.find(key);
  if (it != reg.table.end()) return it->second.get();
  auto data = std::make_unique<detail::SymbolData>();
  data->role = role;
  data->name = name;
  data->orders = orders;
  data->axes = axes;
  data->display = make_display(name, orders, axes);
  data->order = std::accumulate(orders.begin(), orders.end(), 0);
  const auto* raw = data.get();
  reg.table.emplace(std::move(key), std::move(data));
  return raw;
}

Symbol::Symbol(Role role, const std::string& name) : data_(intern(role, name, {}, {})) {}

Symbol Symbol::jet(const std::string& name, const std::vector<int>& orders,
                   const std::vector<std::string>& axes) {
  const int total = std::accumulate(orders.begin(), orders.end(), 0);
  return Symbol(intern(total == 0 ? Role::Dependent : Role::Jet, name, orders, axes));
}

Role Symbol::role() const { return data_->role; }
const std::string& Symbol::name() const { return data_->name; }
const std::vector<int>& Symbol::orders() const { return data_->orders; }
const std::vector<std::string>& Symbol::axes() const { return data_->axes; }
int Symbol::order() const { return data_->order; }
const std::string& Symbol::display() const { return data_->display; }

std::string Symbol::source() const {
  if (data_->order == 0) return data_->name;
  std::string out = "d(" + data_->name;
  for (std::size_t i = 0; i < data_->orders.size(); ++i) {
    for (int k = 0; k < data_->orders[i]; ++k) out += ", " + data_->axes[i];
  }
  return out + ")";
}

Symbol Symbol::derivative(std::size_t axis) const {
  auto orders = data_->orders;
  orders.at(axis) += 1;
  return jet(data_->name, orders, data_->axes);
}

std::strong_ordering compare_multi_index(const std::vector<int>& a, const std::vector<int>& b) {
  const int da = std::accumulate(a.begin(), a.end(), 0);
  const int db = std::accumulate(b.begin(), b.end(), 0);
  if (da != db) return da <=> db;
  // Higher count on an earlier axis sorts first: u_xx < u_xy < u_yy.
  return b <=> a;
}

std::strong_ordering operator<=>(const Symbol& a, const Symbol& b) {
  if (a.data_ == b.data_) return std::strong_ordering::equal;
  const auto& x = *a.data_;
  const auto& y = *b.data_;
  if (x.role != y.role) return x.role <=> y.role;
  if (auto c = x.name <=> y.name; c != 0) return c;
  if (auto c = compare_multi_index(x.orders, y.orders); c != 0) return c;
  return x.axes <=> y.axes;
}

}  // namespace liesym
