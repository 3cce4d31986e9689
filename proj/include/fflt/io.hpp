#pragma once
//
// Header-line CSV node files.
//
//   laplace: y,xi,fhat_re,fhat_im
//   disk:    z_re,z_im,exponent,fhat_re,fhat_im
//
// '.' decimal separator, no thousands separators, numbers written with 17
// significant digits.
//

#include <fflt/bench.hpp>
#include <fflt/matrix.hpp>

#include <charconv>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fflt {

struct LaplaceInput
{
    std::vector<real>    y;
    std::vector<real>    xi;
    std::vector<complex> fhat;

    friend bool operator==(const LaplaceInput&, const LaplaceInput&) = default;
};

struct DiskInput
{
    std::vector<complex> nodes;
    std::vector<real>    exponents;
    std::vector<complex> fhat;

    friend bool operator==(const DiskInput&, const DiskInput&) = default;
};

class CsvError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::vector<real> parse_csv_line(std::string_view line, std::size_t expected, std::size_t lineno)
{
    if (!line.empty() && line.back() == '\r')
        line.remove_suffix(1);
    std::vector<real> out;
    std::size_t pos = 0;
    while (true)
    {
        const std::size_t comma = line.find(',', pos);
        std::string_view field = line.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        real v = 0;
        const auto* first = field.data();
        const auto* last = field.data() + field.size();
        if (first != last && *first == '+')
            ++first;
        const auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc{} || ptr != last || field.empty())
            throw CsvError("line " + std::to_string(lineno) + ": malformed number '" + std::string(field) + "'");
        out.push_back(v);
        if (comma == std::string_view::npos)
            break;
        pos = comma + 1;
    }
    if (out.size() != expected)
        throw CsvError("line " + std::to_string(lineno) + ": expected " + std::to_string(expected) + " fields");
    return out;
}

template <typename OnRow>
void read_csv(std::istream& in, std::string_view header, std::size_t fields, OnRow&& on_row)
{
    std::string line;
    if (!std::getline(in, line))
        throw CsvError("empty input file");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (line != header)
        throw CsvError("unexpected header '" + line + "', expected '" + std::string(header) + "'");
    std::size_t lineno = 1;
    while (std::getline(in, line))
    {
        ++lineno;
        if (line.empty() || line == "\r")
            continue;
        on_row(parse_csv_line(line, fields, lineno));
    }
}

} // namespace detail

inline constexpr std::string_view laplace_csv_header = "y,xi,fhat_re,fhat_im";
inline constexpr std::string_view disk_csv_header = "z_re,z_im,exponent,fhat_re,fhat_im";

inline LaplaceInput read_laplace_csv(std::istream& in)
{
    LaplaceInput d;
    detail::read_csv(in, laplace_csv_header, 4, [&](const std::vector<real>& v) {
        d.y.push_back(v[0]);
        d.xi.push_back(v[1]);
        d.fhat.emplace_back(v[2], v[3]);
    });
    if (d.y.empty())
        throw CsvError("no data rows");
    return d;
}

inline void write_laplace_csv(std::ostream& out, const LaplaceInput& d)
{
    if (d.y.size() != d.xi.size() || d.xi.size() != d.fhat.size())
        throw std::invalid_argument("laplace input columns differ in length");
    out << laplace_csv_header << '\n';
    for (std::size_t i = 0; i < d.y.size(); ++i)
        out << format_real(d.y[i]) << ',' << format_real(d.xi[i]) << ',' << format_real(d.fhat[i].real()) << ','
            << format_real(d.fhat[i].imag()) << '\n';
}

inline DiskInput read_disk_csv(std::istream& in)
{
    DiskInput d;
    detail::read_csv(in, disk_csv_header, 5, [&](const std::vector<real>& v) {
        d.nodes.emplace_back(v[0], v[1]);
        d.exponents.push_back(v[2]);
        d.fhat.emplace_back(v[3], v[4]);
    });
    if (d.nodes.empty())
        throw CsvError("no data rows");
    return d;
}

inline void write_disk_csv(std::ostream& out, const DiskInput& d)
{
    if (d.nodes.size() != d.exponents.size() || d.exponents.size() != d.fhat.size())
        throw std::invalid_argument("disk input columns differ in length");
    out << disk_csv_header << '\n';
    for (std::size_t i = 0; i < d.nodes.size(); ++i)
        out << format_real(d.nodes[i].real()) << ',' << format_real(d.nodes[i].imag()) << ','
            << format_real(d.exponents[i]) << ',' << format_real(d.fhat[i].real()) << ','
            << format_real(d.fhat[i].imag()) << '\n';
}

} // namespace fflt
