#pragma once

// Assets compiled into the library.

#include <string_view>

#include "shatter/constructions.hpp"
#include "shatter/gadget.hpp"

namespace shatter {

/// Raw JSON of the shipped (n=2, dim=2) gadget certificate.
std::string_view bundled_gadget_json();

/// The shipped certificate, parsed and verified on first use.
const BoxGadget& bundled_gadget();

/// build_theorem1(4, 2, bundled_gadget()).
const Theorem1Instance& bundled_instance();

}  // namespace shatter
