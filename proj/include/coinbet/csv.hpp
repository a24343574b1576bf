#ifndef COINBET_CSV_HPP_
#define COINBET_CSV_HPP_

#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace coinbet::csv {

/// Shortest decimal string that parses back to the same double.
std::string format_double(double value);

/// Quotes a field when it contains a comma, quote, or line break.
std::string escape(std::string_view field);

class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}

  void comment(std::string_view text);
  void header(const std::vector<std::string>& columns);
  void row(const std::vector<std::string>& fields);

 private:
  std::ostream& out_;
};

}  // namespace coinbet::csv

#endif  // COINBET_CSV_HPP_
