#ifndef ZFREE_CLI_HPP
#define ZFREE_CLI_HPP

#include <iosfwd>
#include <string>

#include "zfree/certified.hpp"

namespace zfree {

// Exit codes: 0 ok, 1 verification failure, 2 domain error, 3 numeric failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFail = 1;
inline constexpr int kExitDomain = 2;
inline constexpr int kExitNumeric = 3;

// Parses "a+bi" / "a-bi" / "a" / "bi" complex literals.
cplx parse_complex(const std::string& text);

// Full CLI: certify-zeta, verify, distance, disc-geometry.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace zfree

#endif
