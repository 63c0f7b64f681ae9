#ifndef MB_COLOURING_H_
#define MB_COLOURING_H_

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace mb {

enum class Colour : std::uint8_t { kRed, kBlue };

inline Colour Flip(Colour c) {
  return c == Colour::kRed ? Colour::kBlue : Colour::kRed;
}
inline const char* ColourName(Colour c) {
  return c == Colour::kRed ? "red" : "blue";
}

// A red/blue colouring of the edges of K_{u,n}: left labels 0..u-1, right
// labels 0..n-1.
class Colouring {
 public:
  Colouring(std::uint64_t u, std::uint64_t n, Colour fill = Colour::kRed)
      : u_(u), n_(n), cells_(u * n, fill) {}

  std::uint64_t left_size() const { return u_; }
  std::uint64_t right_size() const { return n_; }
  Colour At(std::uint64_t left, std::uint64_t right) const {
    return cells_[right * u_ + left];
  }
  void Set(std::uint64_t left, std::uint64_t right, Colour c) {
    cells_[right * u_ + left] = c;
  }

  // "u,v,colour" rows with a header line, left-major.
  std::string ToCsv() const {
    std::string out = "u,v,colour\n";
    for (std::uint64_t l = 0; l < u_; ++l) {
      for (std::uint64_t r = 0; r < n_; ++r) {
        out += std::to_string(l) + "," + std::to_string(r) + "," +
               ColourName(At(l, r)) + "\n";
      }
    }
    return out;
  }

  // Reads ToCsv output back. Sizes are one more than the largest labels;
  // cells the file leaves out stay red. Throws std::invalid_argument naming
  // the line.
  static Colouring FromCsv(const std::string& text) {
    struct Row {
      std::uint64_t u, v;
      Colour c;
    };
    std::vector<Row> rows;
    std::uint64_t u = 0;
    std::uint64_t n = 0;
    std::istringstream in(text);
    std::string line;
    for (std::size_t no = 1; std::getline(in, line); ++no) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || (no == 1 && line == "u,v,colour")) continue;
      std::istringstream fields(line);
      std::string a, b, c;
      std::getline(fields, a, ',');
      std::getline(fields, b, ',');
      std::getline(fields, c);
      Row r{};
      try {
        std::size_t ua = 0, ub = 0;
        r.u = std::stoull(a, &ua);
        r.v = std::stoull(b, &ub);
        if (ua != a.size() || ub != b.size()) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw std::invalid_argument("line " + std::to_string(no) +
                                    ": expected u,v,colour");
      }
      if (c == "red") {
        r.c = Colour::kRed;
      } else if (c == "blue") {
        r.c = Colour::kBlue;
      } else {
        throw std::invalid_argument("line " + std::to_string(no) +
                                    ": colour must be red or blue");
      }
      u = std::max(u, r.u + 1);
      n = std::max(n, r.v + 1);
      rows.push_back(r);
    }
    Colouring out(u, n);
    for (const Row& r : rows) out.Set(r.u, r.v, r.c);
    return out;
  }

  friend bool operator==(const Colouring&, const Colouring&) = default;

 private:
  std::uint64_t u_;
  std::uint64_t n_;
  std::vector<Colour> cells_;
};

// A monochromatic K_{a,b}: left and right labels, each ascending.
struct MonoBiclique {
  Colour colour = Colour::kRed;
  std::vector<std::uint64_t> left;
  std::vector<std::uint64_t> right;

  friend bool operator==(const MonoBiclique&, const MonoBiclique&) = default;
};

}  // namespace mb

#endif  // MB_COLOURING_H_
