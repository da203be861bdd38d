#include "svgp/version.hpp"

namespace svgp {

const char* git_revision() {
#ifdef SVGP_GIT_REVISION
  return SVGP_GIT_REVISION;
#else
  return "unknown";
#endif
}

}  // namespace svgp
