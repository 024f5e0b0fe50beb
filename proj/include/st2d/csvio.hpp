// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "st2d/harness.hpp"

namespace st2d {

inline constexpr const char* kFerCsvHeader =
    "ebn0_db,frames,frame_errors,fer,bit_errors,ber,seconds";

void write_fer_csv(std::ostream& os, std::span<const FerRecord> records);

// Same columns with a leading label column, one block per labeled series.
using LabeledRecords = std::vector<std::pair<std::string, FerRecord>>;
void write_fer_csv_labeled(std::ostream& os, const LabeledRecords& records);

// Parses either layout; the label is empty for the unlabeled one. fer and
// ber are re-derived from the integer columns when possible so roundtrips
// are exact in the quantities that matter.
LabeledRecords read_fer_csv(std::istream& is);

}  // namespace st2d
