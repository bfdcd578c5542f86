#ifndef BREQUANT_LOG_HPP
#define BREQUANT_LOG_HPP

namespace brequant {

// Verbosity from the BREQUANT_LOG environment variable:
// unset/0 = quiet, 1 = per-run summaries, 2 = per-iteration detail.
int log_level();

void log_line(int level, const char* fmt, ...);

} // namespace brequant

#endif
