#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace structo {

using Perm = std::vector<std::size_t>;

// "(a,b,c)". Component strings are used verbatim.
std::string tuple_name(const std::vector<std::string>& parts);

// Point names "0", "1", ..., "n-1".
std::vector<std::string> canonical_points(std::size_t n);

std::vector<std::string> split_ws(std::string_view text);
std::string trim(std::string_view text);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

// Restricted growth strings of length n: labels[i] <= 1 + max(labels[0..i)).
// Enumerated in lexicographic order; one per set partition of {0..n-1}.
std::vector<std::vector<std::size_t>> set_partitions(std::size_t n);

// Integer partitions of n in non-increasing part order, reverse lexicographic.
std::vector<std::vector<std::size_t>> integer_partitions(std::size_t n);

Perm identity_perm(std::size_t n);
Perm compose(const Perm& g, const Perm& f);  // g after f
Perm inverse(const Perm& p);
bool is_perm(const Perm& p);
// One-line notation "[p0;p1;...]".
std::string perm_name(const Perm& p);

std::size_t factorial(std::size_t n);
std::size_t ipow(std::size_t base, std::size_t exp);

// 64-bit FNV-1a; stable across platforms, used for content hashes in reports.
std::uint64_t fnv1a(std::string_view data);
std::string hex64(std::uint64_t value);

}  // namespace structo
