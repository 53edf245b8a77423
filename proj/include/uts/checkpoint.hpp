#pragma once

#include <string>

#include "uts/params.hpp"

namespace uts {

// UTSCKPT v1 container. Layout, all integers little-endian:
//   "UTSCKPT v1\n"
//   "PARAMS\n"  u32 count, then records
//   "ACCUMS\n"  u32 count, then records
// record: u32 name_len, name bytes, u8 dtype (0 = f64), u32 rank,
//         u32 dims[rank], raw values.
void save_checkpoint(const ParamStore& params, const std::string& path);
ParamStore load_checkpoint(const std::string& path);

}  // namespace uts
