#ifndef SERRO_CSV_HPP
#define SERRO_CSV_HPP

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "serro/pdh.hpp"
#include "serro/spectral.hpp"

namespace serro {

/// Shortest round-trip decimal representation of a double.
std::string format_double(double v);

/// Emit a sweep table:
///   # schema=1
///   # f_m_hz,N,a_star,conversion_loss_db,suppression_db,spur_offset_hz
/// one comma-separated row per sweep point. Failed rows are emitted as
/// `# error f_m_hz=... message`. Optional band summaries go to a `#` footer.
void emit_sweep_csv(std::ostream& out, std::span<const SweepRow> rows,
                    std::span<const std::string> footer = {});

std::vector<SweepRow> parse_sweep_csv(std::istream& in);

/// Emit a lock-shift curve:
///   # schema=1
///   # f_m_hz,dxi_hz,dxi_over_linewidth
/// Header comments may carry additional `# key=value` context lines.
void emit_lockshift_csv(std::ostream& out, std::span<const LockShiftRow> rows,
                        std::span<const std::string> header = {});

std::vector<LockShiftRow> parse_lockshift_csv(std::istream& in);

/// Human-readable cavity summary: FSR, transverse mode spacing, mode table.
void cavity_report(std::ostream& out, const CavityModel& cavity);

} // namespace serro

#endif
