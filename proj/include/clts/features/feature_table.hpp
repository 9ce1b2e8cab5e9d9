#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "clts/features/feature_vector.hpp"

namespace clts::features {

struct FeatureRecord {
    std::string doc_id;
    std::string corpus_id;
    std::string strategy;
    std::string model;
    FeatureVector values;
};

/// Header: doc_id, corpus, strategy, model, then one column per feature.
void write_feature_csv(std::ostream& out, const std::vector<FeatureRecord>& records);
/// Throws IoError or FormatError.
std::vector<FeatureRecord> read_feature_csv(const std::filesystem::path& path);

}  // namespace clts::features
