#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "opacity/instance.hpp"

namespace opacity::fixtures {

CsoInstance f1();   // CSO-opaque
CsoInstance f2();   // F1 without 2 -a-> 2; violated by "a"
CsoInstance f3();   // CSO-opaque, 1-SO and INSO violated
IsoInstance f4o();  // ISO-opaque
IsoInstance f4x();  // f4o without 0 -a-> 0
LboInstance f5();   // A_S marks "ab", A_NS marks "uab"

InsoInstance as_inso(const CsoInstance& c);
KsoInstance as_kso(const CsoInstance& c, std::uint64_t k);

/// "F1", "F2", "F3", "F4o", "F4x", "F5" (and "F4" for F4o).
std::optional<OpacityInstance> by_name(std::string_view name);
std::vector<std::string> names();

}  // namespace opacity::fixtures
