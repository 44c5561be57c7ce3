#include "mgt/real.hpp"

#include <iostream>
#include <mutex>

namespace mgt {

unsigned PrecisionScope::digits10_for_bits(unsigned bits) {
    // bits * log10(2), rounded up
    return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

PrecisionScope::PrecisionScope(unsigned bits) : saved_digits10_(HpReal::default_precision()) {
    HpReal::default_precision(digits10_for_bits(bits));
}

PrecisionScope::~PrecisionScope() { HpReal::default_precision(saved_digits10_); }

HorizonError::HorizonError(std::size_t requested, std::size_t horizon)
    : Error("moment of order " + std::to_string(requested) + " requested beyond horizon " +
            std::to_string(horizon)),
      requested_(requested),
      horizon_(horizon) {}

QuasiDefinitenessError::QuasiDefinitenessError(std::size_t degree, const std::string& what)
    : Error("quasi-definiteness failure at degree " + std::to_string(degree) + ": " + what),
      degree_(degree) {}

PositivityError::PositivityError(std::size_t degree, const std::string& what)
    : Error("positivity failure at degree " + std::to_string(degree) + ": " + what), degree_(degree) {}

namespace {

std::mutex& sink_mutex() {
    static std::mutex m;
    return m;
}

WarningSink& sink_storage() {
    static WarningSink sink = [](std::string_view msg) { std::clog << "warning: " << msg << '\n'; };
    return sink;
}

}  // namespace

WarningSink set_warning_sink(WarningSink sink) {
    std::lock_guard lock(sink_mutex());
    WarningSink previous = std::move(sink_storage());
    sink_storage() = std::move(sink);
    return previous;
}

void warn(std::string_view message) {
    std::lock_guard lock(sink_mutex());
    if (sink_storage()) sink_storage()(message);
}

}  // namespace mgt
