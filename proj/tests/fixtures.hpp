#pragma once

#include <string>

#include "srd/io.hpp"
#include "srd/preprocess.hpp"

namespace fixtures {

inline std::string data_path(const std::string& name) { return std::string(SRD_DATA_DIR) + "/" + name; }

inline srd::DataTable bundesliga() { return srd::read_table({data_path("bundesliga.csv")}); }
inline srd::DataTable mep() { return srd::read_table({data_path("mep_profiles.csv")}); }

// SRD_input with the (max, min, mean, mean) reference appended
inline srd::DataTable srd_input_mixed() {
  using srd::RowAggregate;
  const auto raw = srd::read_table({data_path("srd_input.csv")});
  return srd::create_reference(
      raw.with_reference(std::nullopt),
      srd::ReferenceSpec::mixed({RowAggregate::Max, RowAggregate::Min, RowAggregate::Mean,
                                 RowAggregate::Mean}));
}

}  // namespace fixtures
