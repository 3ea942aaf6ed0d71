#pragma once

// Test-only formula enumerator working on plain strings: builds every
// ordered pair of terms with L leaves in total over x1..xL, renames by first
// occurrence and keeps the smaller orientation as the class key.

#include <set>
#include <string>
#include <vector>

namespace oracle {

inline std::vector<std::string> terms_with_leaves(int leaves, int vars) {
  std::vector<std::string> out;
  if (leaves == 1) {
    for (int v = 1; v <= vars; ++v) out.push_back("x" + std::to_string(v));
    return out;
  }
  for (int a = 1; a < leaves; ++a) {
    auto left = terms_with_leaves(a, vars);
    auto right = terms_with_leaves(leaves - a, vars);
    for (const char* op : {"f", "p"}) {
      for (const auto& l : left) {
        for (const auto& r : right) out.push_back(std::string(op) + "(" + l + "," + r + ")");
      }
    }
  }
  return out;
}

// Renames variables of "lhs = rhs" by first occurrence.
inline std::string rename_by_occurrence(const std::string& eq) {
  std::vector<std::string> seen;
  std::string out;
  for (std::size_t i = 0; i < eq.size();) {
    if (eq[i] != 'x') {
      out += eq[i++];
      continue;
    }
    std::size_t j = i + 1;
    while (j < eq.size() && isdigit(static_cast<unsigned char>(eq[j]))) ++j;
    std::string name = eq.substr(i, j - i);
    std::size_t k = 0;
    while (k < seen.size() && seen[k] != name) ++k;
    if (k == seen.size()) seen.push_back(name);
    out += "x" + std::to_string(k + 1);
    i = j;
  }
  return out;
}

inline std::string class_key(const std::string& lhs, const std::string& rhs) {
  std::string a = rename_by_occurrence(lhs + " = " + rhs);
  std::string b = rename_by_occurrence(rhs + " = " + lhs);
  return a < b ? a : b;
}

inline std::set<std::string> formula_classes(int length) {
  std::set<std::string> out;
  for (int a = 1; a < length; ++a) {
    for (const auto& l : terms_with_leaves(a, length)) {
      for (const auto& r : terms_with_leaves(length - a, length)) out.insert(class_key(l, r));
    }
  }
  return out;
}

}  // namespace oracle
