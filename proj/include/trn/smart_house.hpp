#pragma once

#include "trn/resource.hpp"

namespace trn {

// Demo scenario: a day of household appliance scheduling against a 150W
// net-metering cap, with an uncertain arrival home and an uncertain sunset.
// Times are minutes after noon.
Trn smart_house_trn();

}  // namespace trn
