#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace ddcalc::cli {

/// 12 significant digits, shortest form, '.' decimal point.
std::string format_number(double v);

/// RFC-4180 field quoting.
std::string quote_field(std::string_view s);

class CsvWriter {
public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}

    void header(const std::vector<std::string>& names);
    CsvWriter& field(std::string_view s);
    CsvWriter& field(const char* s) { return field(std::string_view(s)); }
    CsvWriter& field(double v);
    CsvWriter& field(std::optional<double> v);
    CsvWriter& field(long long v);
    CsvWriter& field(unsigned long long v);
    CsvWriter& field(bool v);
    void end_row();

private:
    void sep();
    std::ostream& out_;
    bool first_ = true;
};

}  // namespace ddcalc::cli
