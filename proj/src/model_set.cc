#include "prefhist/model_set.h"

#include "text_util.h"

namespace prefhist {

ModelSet ModelSet::of(std::initializer_list<int> models) {
  ModelSet s;
  for (int m : models) {
    if (m < 0 || m >= Universe::kMaxModels) throw Error("model index out of range");
    s |= singleton(m);
  }
  return s;
}

std::vector<int> ModelSet::members() const {
  std::vector<int> out;
  out.reserve(size());
  for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
  return out;
}

Universe Universe::atoms(int k) {
  if (k < 0 || k > kMaxAtoms) {
    throw Error("atom count must be in [0, " + std::to_string(kMaxAtoms) + "]");
  }
  return Universe(1 << k, k);
}

Universe Universe::abstract(int m) {
  if (m < 1 || m > kMaxModels) {
    throw Error("universe size must be in [1, " + std::to_string(kMaxModels) + "]");
  }
  return Universe(m, -1);
}

std::string Universe::header() const {
  return has_atoms() ? "atoms=" + std::to_string(atom_count_)
                     : "universe=" + std::to_string(size_);
}

std::string to_string(ModelSet s) {
  std::string out = "{";
  bool first = true;
  for (int m : s.members()) {
    if (!first) out += ',';
    out += std::to_string(m);
    first = false;
  }
  return out + "}";
}

ModelSet parse_model_set(std::string_view text, const Universe& u) {
  text = text::trim(text);
  if (text.size() < 2 || text.front() != '{' || text.back() != '}') {
    throw Error("malformed model set '" + std::string(text) + "'");
  }
  const auto body = text::trim(text.substr(1, text.size() - 2));
  ModelSet s;
  if (body.empty()) return s;
  for (auto item : text::split(body, ',')) {
    const auto v = text::to_int(item);
    if (!v) throw Error("malformed model set '" + std::string(text) + "'");
    if (*v < 0 || *v >= u.size()) {
      throw Error("model " + std::to_string(*v) + " outside universe of size " +
                  std::to_string(u.size()));
    }
    s |= ModelSet::singleton(static_cast<int>(*v));
  }
  return s;
}

bool entails(const Universe& u, ModelSet a, ModelSet b) {
  if (!u.contains(a) || !u.contains(b)) throw Error("model set outside universe");
  return a.subset_of(b);
}

}  // namespace prefhist
