#include "etopo/types.hpp"

namespace etopo {

const char* to_string(Errc code) {
  switch (code) {
    case Errc::invalid_level: return "invalid-level";
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::not_found: return "not-found";
    case Errc::too_small_lattice: return "too-small-lattice";
    case Errc::placement: return "placement";
    case Errc::no_contacts: return "no-contacts";
    case Errc::not_connected: return "not-connected";
    case Errc::dimension_mismatch: return "dimension-mismatch";
    case Errc::unmapped: return "unmapped";
    case Errc::too_large: return "too-large";
    case Errc::config: return "config";
  }
  return "unknown";
}

}  // namespace etopo
