#ifndef SERRO_CONSTANTS_HPP
#define SERRO_CONSTANTS_HPP

namespace serro {

inline constexpr double speed_of_light = 299792458.0; // m/s, exact

} // namespace serro

#endif
