// Copyright 2026 The itelint Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ITELINT_TEXT_HPP_
#define ITELINT_TEXT_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace itelint::text {

std::string_view trim(std::string_view s);
std::string to_lower(std::string_view s);
bool iequals(std::string_view a, std::string_view b);

/// Lower-cased with internal whitespace runs collapsed to one space.
std::string fold_name(std::string_view s);

/// Number of maximal non-whitespace runs.
std::size_t word_count(std::string_view s);

/// Number of Unicode scalar values in a UTF-8 string.
std::size_t char_count(std::string_view s);

std::vector<std::string> split_whitespace(std::string_view s);

/// Case-insensitive search for `needle` with word boundaries on both ends.
bool contains_word(std::string_view haystack, std::string_view needle);

/// contains_word for arguments already lower-cased and trimmed.
bool contains_word_lower(std::string_view haystack, std::string_view needle);

/// Case-insensitive substring test.
bool icontains(std::string_view haystack, std::string_view needle);

}  // namespace itelint::text

#endif  // ITELINT_TEXT_HPP_
