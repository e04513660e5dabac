#ifndef OKG_IO_HH
#define OKG_IO_HH

#include <map>
#include <string>
#include <string_view>

#include "okg/grid.hh"
#include "okg/norms.hh"

/*
 On-disk formats, all little-endian.

 Single lattice ("OKG1"): a 64-byte header

   bytes  0- 3  magic "OKG1"
   bytes  4- 7  u32 dimension
   bytes  8-11  u32 points per axis
   bytes 12-15  u32 domain (0 physical samples, 1 spectral coefficients)
   bytes 16-23  f64 period L
   bytes 24-63  zero

 followed by n^d interleaved (re, im) f64 pairs in row-major lattice order.

 Time series ("OKGS"): same header shape with the domain word replaced by a
 u32 snapshot count, followed per snapshot by one f64 time and the spectral
 coefficient block. Series are always stored frequency-side.

 All writers go through atomic_write (temp file + rename), so readers never
 observe partial files. Doubles print with %.17g wherever text is emitted,
 which round-trips exactly.
*/

namespace okg {

enum class DataDomain : std::uint32_t { physical = 0, frequency = 1 };

void write_field(const std::string& path, const Field& f);
void write_spectrum(const std::string& path, const Spectrum& F);

// Readers enforce magic, domain word, and payload size.
Field read_field(const std::string& path);
Spectrum read_spectrum(const std::string& path);

void write_series(const std::string& path, const TimeSeriesField& u);
TimeSeriesField read_series(const std::string& path);

void atomic_write(const std::string& path, std::string_view bytes);

std::string format_g17(double v);

// Flat key=value config text: blank lines and #-comments skipped, errors
// carry the 1-based line number. Keys are not validated here; the caller
// owns the schema.
std::map<std::string, std::string> load_config(const std::string& path);

}  // namespace okg

#endif
