#include "clts/features/feature_table.hpp"

#include <cstdlib>
#include <fstream>

#include "clts/common/csv.hpp"
#include "clts/common/error.hpp"

namespace clts::features {

namespace {

constexpr std::size_t kKeyColumns = 4;

std::vector<std::string> header() {
    std::vector<std::string> h = {"doc_id", "corpus", "strategy", "model"};
    for (const auto& field : kFeatureFields) h.emplace_back(field.name);
    return h;
}

}  // namespace

void write_feature_csv(std::ostream& out, const std::vector<FeatureRecord>& records) {
    csv::write_row(out, header());
    for (const auto& r : records) {
        std::vector<std::string> row = {r.doc_id, r.corpus_id, r.strategy, r.model};
        for (const auto& field : kFeatureFields)
            row.push_back(csv::format_number(r.values.*field.member));
        csv::write_row(out, row);
    }
}

std::vector<FeatureRecord> read_feature_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open feature table " + path.string());
    std::vector<std::string> fields;
    std::size_t line = 0;
    if (!csv::read_row(in, fields, line) || fields != header())
        throw FormatError(1, "unexpected feature table header");
    std::vector<FeatureRecord> out;
    while (csv::read_row(in, fields, line)) {
        if (fields.size() != kKeyColumns + kFeatureFields.size())
            throw FormatError(line, "expected " + std::to_string(kKeyColumns + kFeatureFields.size()) +
                                        " columns, got " + std::to_string(fields.size()));
        FeatureRecord r{fields[0], fields[1], fields[2], fields[3], {}};
        for (std::size_t i = 0; i < kFeatureFields.size(); ++i) {
            const std::string& cell = fields[kKeyColumns + i];
            char* end = nullptr;
            const double v = std::strtod(cell.c_str(), &end);
            if (cell.empty() || *end != '\0')
                throw FormatError(line, "non-numeric value for " + std::string(kFeatureFields[i].name));
            r.values.*kFeatureFields[i].member = v;
        }
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace clts::features
