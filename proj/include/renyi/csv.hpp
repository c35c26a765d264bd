#pragma once

#include <initializer_list>
#include <optional>
#include <string>

namespace renyi::csv {

/// Round-trip decimal representation (%.17g); identical inputs give identical bytes.
std::string number(double value);
std::string number(const std::optional<double>& value);  // empty field when absent

/// RFC-4180 field: quoted when it contains a comma, quote or newline.
std::string field(const std::string& text);

std::string join(std::initializer_list<std::string> fields);

}  // namespace renyi::csv
