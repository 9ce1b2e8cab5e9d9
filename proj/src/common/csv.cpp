#include "clts/common/csv.hpp"

#include <cmath>
#include <cstdio>

namespace clts::csv {

std::string escape(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out.push_back('"');
    return out;
}

void write_row(std::ostream& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out << ',';
        out << escape(fields[i]);
    }
    out << '\n';
}

bool read_row(std::istream& in, std::vector<std::string>& fields, std::size_t& line) {
    fields.clear();
    std::string raw;
    if (!std::getline(in, raw)) return false;
    ++line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();

    std::string field;
    bool quoted = false;
    std::size_t i = 0;
    for (;;) {
        if (i >= raw.size()) {
            if (quoted) {
                std::string next;
                if (!std::getline(in, next)) break;
                ++line;
                if (!next.empty() && next.back() == '\r') next.pop_back();
                field.push_back('\n');
                raw = std::move(next);
                i = 0;
                continue;
            }
            break;
        }
        const char c = raw[i++];
        if (quoted) {
            if (c == '"') {
                if (i < raw.size() && raw[i] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else {
            field.push_back(c);
        }
    }
    fields.push_back(std::move(field));
    return true;
}

std::string format_number(double value, int precision) {
    if (std::isnan(value)) return "nan";
    if (value == 0.0) value = 0.0;  // drop negative zero
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", precision, value);
    std::string s(buf);
    if (s.size() > 1 && s[0] == '-' && s.find_first_not_of("-0.") == std::string::npos)
        s.erase(0, 1);
    return s;
}

}  // namespace clts::csv
