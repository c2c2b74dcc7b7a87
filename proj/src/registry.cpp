#include <algorithm>
#include <array>

#include "ncpc/ingest.hpp"

namespace ncpc {

namespace {

// Datastream-style panel codes. Classes follow the S&P scheme the source
// tables use; note CH = Canada, BD = Germany, OE = Austria.
constexpr std::array<CountryInfo, 41> kRegistry{{
    {"AG", "Argentina", MarketClass::Frontier},
    {"AU", "Australia", MarketClass::Developed},
    {"BD", "Germany", MarketClass::Developed},
    {"BG", "Belgium", MarketClass::Developed},
    {"BR", "Brazil", MarketClass::Emerging},
    {"CH", "Canada", MarketClass::Developed},
    {"CL", "Chile", MarketClass::Emerging},
    {"CN", "China", MarketClass::Emerging},
    {"CZ", "Czech Republic", MarketClass::Emerging},
    {"DK", "Denmark", MarketClass::Developed},
    {"ES", "Spain", MarketClass::Developed},
    {"FN", "Finland", MarketClass::Developed},
    {"FR", "France", MarketClass::Developed},
    {"GR", "Greece", MarketClass::Emerging},
    {"HN", "Hungary", MarketClass::Emerging},
    {"ID", "Indonesia", MarketClass::Emerging},
    {"IN", "India", MarketClass::Emerging},
    {"IR", "Ireland", MarketClass::Developed},
    {"IT", "Italy", MarketClass::Developed},
    {"JP", "Japan", MarketClass::Developed},
    {"KO", "South Korea", MarketClass::Developed},
    {"MX", "Mexico", MarketClass::Emerging},
    {"MY", "Malaysia", MarketClass::Emerging},
    {"NL", "Netherlands", MarketClass::Developed},
    {"NW", "Norway", MarketClass::Developed},
    {"OE", "Austria", MarketClass::Developed},
    {"PH", "Philippines", MarketClass::Emerging},
    {"PO", "Poland", MarketClass::Emerging},
    {"PT", "Portugal", MarketClass::Developed},
    {"RM", "Romania", MarketClass::Frontier},
    {"RS", "Russia", MarketClass::Emerging},
    {"SA", "South Africa", MarketClass::Emerging},
    {"SD", "Sweden", MarketClass::Developed},
    {"SP", "Singapore", MarketClass::Developed},
    {"SW", "Switzerland", MarketClass::Developed},
    {"TH", "Thailand", MarketClass::Emerging},
    {"TK", "Turkey", MarketClass::Emerging},
    {"TW", "Taiwan", MarketClass::Emerging},
    {"UK", "United Kingdom", MarketClass::Developed},
    {"US", "United States", MarketClass::Developed},
    {"VE", "Venezuela", MarketClass::Frontier},
}};

}  // namespace

std::span<const CountryInfo> country_registry() { return kRegistry; }

const CountryInfo* find_country(std::string_view code) {
    auto it = std::find_if(kRegistry.begin(), kRegistry.end(),
                           [&](const CountryInfo& c) { return c.code == code; });
    return it == kRegistry.end() ? nullptr : &*it;
}

const char* market_class_letter(MarketClass c) {
    switch (c) {
        case MarketClass::Developed: return "D";
        case MarketClass::Emerging: return "E";
        case MarketClass::Frontier: return "F";
    }
    return "?";
}

}  // namespace ncpc
