#include "sepkit/abelian.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <tuple>

#include "sepkit/error.hpp"

namespace sepkit {

  namespace {
    std::string lower(std::string s) {
      for (auto& c : s) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      }
      return s;
    }

    std::uint64_t parse_positive(std::string const& s, std::string const& token) {
      if (s.empty() || s.size() > 18 || !std::all_of(s.begin(), s.end(), ::isdigit)) {
        throw FormatError("abelian descriptor: bad number in '" + token + "'");
      }
      return std::stoull(s);
    }

    std::vector<std::pair<std::uint64_t, std::uint64_t>> factorize(std::uint64_t m) {
      std::vector<std::pair<std::uint64_t, std::uint64_t>> out;  // (p, p^e)
      for (std::uint64_t p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
          std::uint64_t q = 1;
          while (m % p == 0) {
            m /= p;
            q *= p;
          }
          out.emplace_back(p, q);
        }
      }
      if (m > 1) {
        out.emplace_back(m, m);
      }
      return out;
    }

    std::uint64_t prime_of(AbelianFactor const& f) {
      return f.kind == AbelianFactor::Kind::family ? f.n : factorize(f.n).front().first;
    }

    bool has_infinite_copies(AbelianDescriptor const& d) {
      return std::any_of(d.entries.begin(), d.entries.end(),
                         [](AbelianFactor const& f) { return !f.multiplicity; });
    }

    bool has_kind(AbelianDescriptor const& d, AbelianFactor::Kind k) {
      return std::any_of(d.entries.begin(), d.entries.end(),
                         [k](AbelianFactor const& f) { return f.kind == k; });
    }
  }  // namespace

  bool is_prime(std::uint64_t p) noexcept {
    if (p < 2) {
      return false;
    }
    for (std::uint64_t q = 2; q * q <= p; ++q) {
      if (p % q == 0) {
        return false;
      }
    }
    return true;
  }

  std::string AbelianDescriptor::to_string() const {
    std::string out = mode == Mode::sum ? "sum" : "prod";
    for (auto const& f : entries) {
      out += ' ';
      switch (f.kind) {
        case AbelianFactor::Kind::integers:
          out += "Z";
          break;
        case AbelianFactor::Kind::cyclic:
          out += "Z/" + std::to_string(f.n);
          break;
        case AbelianFactor::Kind::family:
          out += "fam" + std::to_string(f.n);
          break;
      }
      out += "*" + (f.multiplicity ? std::to_string(*f.multiplicity) : std::string("omega"));
    }
    return out;
  }

  AbelianDescriptor parse_abelian(std::string const& text) {
    std::string cleaned = text;
    std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
    std::istringstream ss(cleaned);
    std::string        word;
    if (!(ss >> word)) {
      throw FormatError("abelian descriptor: empty");
    }
    AbelianDescriptor d;
    word = lower(word);
    if (word == "sum") {
      d.mode = AbelianDescriptor::Mode::sum;
    } else if (word == "prod" || word == "product") {
      d.mode = AbelianDescriptor::Mode::product;
    } else {
      throw FormatError("abelian descriptor: expected 'sum' or 'prod', got '" + word + "'");
    }
    std::string token;
    while (ss >> token) {
      std::string t    = lower(token);
      std::string body = t, mult;
      if (auto star = t.find('*'); star != std::string::npos) {
        body = t.substr(0, star);
        mult = t.substr(star + 1);
      }
      AbelianFactor f;
      if (mult == "omega" || mult == "w") {
        f.multiplicity = std::nullopt;
      } else if (!mult.empty()) {
        f.multiplicity = parse_positive(mult, token);
        if (*f.multiplicity == 0) {
          throw FormatError("abelian descriptor: zero multiplicity in '" + token + "'");
        }
      }
      if (body == "q" || body.find("inf") != std::string::npos || body.rfind("prufer", 0) == 0
          || body.rfind("pruefer", 0) == 0) {
        throw FormatError("abelian descriptor: divisible groups such as '" + token
                          + "' are outside the supported grammar");
      }
      if (body == "z") {
        f.kind = AbelianFactor::Kind::integers;
      } else if (body.rfind("z/", 0) == 0) {
        f.kind = AbelianFactor::Kind::cyclic;
        f.n    = parse_positive(body.substr(2), token);
        if (f.n < 2) {
          throw FormatError("abelian descriptor: Z/m needs m >= 2 in '" + token + "'");
        }
      } else if (body.rfind("fam", 0) == 0) {
        f.kind = AbelianFactor::Kind::family;
        f.n    = parse_positive(body.substr(3), token);
        if (!is_prime(f.n)) {
          throw FormatError("abelian descriptor: family needs a prime in '" + token + "'");
        }
      } else {
        throw FormatError("abelian descriptor: unknown entry '" + token + "'");
      }
      d.entries.push_back(f);
    }
    return d;
  }

  AbelianDescriptor normalize(AbelianDescriptor const& d) {
    using Key = std::tuple<int, std::uint64_t>;
    std::map<Key, std::optional<std::uint64_t>> merged;
    auto                                        add = [&](AbelianFactor::Kind k, std::uint64_t n,
                           std::optional<std::uint64_t> mult) {
      Key  key{static_cast<int>(k), n};
      auto it = merged.find(key);
      if (it == merged.end()) {
        merged.emplace(key, mult);
      } else if (it->second && mult) {
        *it->second += *mult;
      } else {
        it->second = std::nullopt;
      }
    };
    for (auto const& f : d.entries) {
      if (f.kind == AbelianFactor::Kind::cyclic) {
        for (auto [p, q] : factorize(f.n)) {
          add(f.kind, q, f.multiplicity);
        }
      } else {
        add(f.kind, f.kind == AbelianFactor::Kind::integers ? 0 : f.n, f.multiplicity);
      }
    }
    AbelianDescriptor out;
    out.mode = d.mode;
    for (auto const& [key, mult] : merged) {
      out.entries.push_back(
          AbelianFactor{static_cast<AbelianFactor::Kind>(std::get<0>(key)), std::get<1>(key), mult});
    }
    return out;
  }

  bool is_torsion(AbelianDescriptor const& d) {
    if (has_kind(d, AbelianFactor::Kind::integers)) {
      return false;
    }
    // A product over a family contains (1, 1, 1, ...), which has infinite
    // order; in a direct sum every element has finite support.
    return d.mode == AbelianDescriptor::Mode::sum || !has_kind(d, AbelianFactor::Kind::family);
  }

  bool p_exponent_bounded(AbelianDescriptor const& d, std::uint64_t p) {
    if (!is_prime(p)) {
      throw ArgumentError("p_exponent_bounded: " + std::to_string(p) + " is not prime");
    }
    return std::none_of(d.entries.begin(), d.entries.end(), [p](AbelianFactor const& f) {
      return f.kind == AbelianFactor::Kind::family && f.n == p;
    });
  }

  bool is_finite(AbelianDescriptor const& d) {
    return !has_infinite_copies(d) && !has_kind(d, AbelianFactor::Kind::integers)
           && !has_kind(d, AbelianFactor::Kind::family);
  }

  std::optional<BigInt> finite_order(AbelianDescriptor const& d) {
    if (!is_finite(d)) {
      return std::nullopt;
    }
    BigInt order = 1;
    for (auto const& f : d.entries) {
      for (std::uint64_t i = 0; i < *f.multiplicity; ++i) {
        order *= f.n;
      }
    }
    return order;
  }

  AbelianVerdict classify(AbelianDescriptor const& d_in) {
    auto const     d = normalize(d_in);
    AbelianVerdict v;
    v.residually_finite = true;
    v.reasons.push_back(
        "residually finite: every group in the grammar embeds in a product of finite cyclic groups and copies of Z");

    v.weakly = is_torsion(d);
    v.reasons.push_back(v.weakly ? "weakly separable: torsion and residually finite"
                                 : "not weakly separable: contains an element of infinite order");

    std::vector<std::uint64_t> unbounded;
    for (auto const& f : d.entries) {
      if (f.kind == AbelianFactor::Kind::family) {
        unbounded.push_back(prime_of(f));
      }
    }
    v.strongly = v.weakly && unbounded.empty();
    if (!v.weakly) {
      v.reasons.push_back("not strongly separable: not weakly separable");
    } else if (!unbounded.empty()) {
      v.reasons.push_back("not strongly separable: the " + std::to_string(unbounded.front())
                          + "-primary component has unbounded exponent");
    } else {
      v.reasons.push_back("strongly separable: torsion with every primary component of finite exponent");
    }

    v.completely = is_finite(d);
    v.reasons.push_back(v.completely ? "completely separable: the group is finite"
                                     : "not completely separable: the group is infinite");
    return v;
  }

}  // namespace sepkit
