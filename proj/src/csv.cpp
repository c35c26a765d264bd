#include "renyi/csv.hpp"

#include <cstdio>

namespace renyi::csv {

std::string number(double value)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::string number(const std::optional<double>& value)
{
    return value ? number(*value) : std::string();
}

std::string field(const std::string& text)
{
    if (text.find_first_of(",\"\n\r") == std::string::npos)
        return text;
    std::string out = "\"";
    for (char c : text) {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string join(std::initializer_list<std::string> fields)
{
    std::string out;
    bool first = true;
    for (const auto& f : fields) {
        if (!first)
            out += ',';
        out += f;
        first = false;
    }
    return out;
}

}  // namespace renyi::csv
