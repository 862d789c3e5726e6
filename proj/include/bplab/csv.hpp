#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace bplab {

/// Shortest round-trip text for a double: 17 significant digits, '.' decimal point.
std::string format_real(double v);

using CsvField = std::variant<std::string, double, std::int64_t, std::uint64_t>;

/// RFC-4180 writer: CRLF line ends, fields quoted only when they need it.
class CsvWriter {
  public:
    explicit CsvWriter(std::ostream& out) : out_(&out) {}

    void header(const std::vector<std::string>& columns);
    void row(const std::vector<CsvField>& fields);

    [[nodiscard]] std::size_t columns() const noexcept { return columns_; }

  private:
    void write_field(std::string_view text);

    std::ostream* out_;
    std::size_t columns_ = 0;
};

/// Inverse of the writer for tests and tooling; handles quoted fields.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

} // namespace bplab
