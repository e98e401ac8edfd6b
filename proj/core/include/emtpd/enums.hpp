#pragma once

#include <array>
#include <string>
#include <string_view>

namespace emtpd {

/// Family of the per-dimension univariate distribution fitted to a subpopulation.
enum class ModelKind { Gaussian, Exponential, Gamma, Beta };

/// Where the cross-task knowledge point comes from.
///
/// PD uses the argmax of the product of both tasks' fitted densities; PD1 is the
/// same knowledge with the second (noise) stage switched off. SR/MR draw one or
/// three random individuals of the other task, SH/MH the one or three individuals
/// closest to the other task's Pareto front.
enum class TransferStrategy { PD, PD1, SR, MR, SH, MH };

/// Quality indicator logged in traces. Auto selects IGD+ for more than three
/// objectives and IGD otherwise.
enum class Indicator { Auto, IGD, IGDPlus };

inline constexpr std::array kAllModelKinds{ModelKind::Gaussian, ModelKind::Exponential,
                                           ModelKind::Gamma, ModelKind::Beta};
inline constexpr std::array kAllStrategies{TransferStrategy::PD, TransferStrategy::PD1,
                                           TransferStrategy::SR, TransferStrategy::MR,
                                           TransferStrategy::SH, TransferStrategy::MH};

std::string_view to_string(ModelKind kind);
std::string_view to_string(TransferStrategy strategy);
std::string_view to_string(Indicator indicator);

// Parsers throw ConfigError listing the accepted vocabulary.
ModelKind parse_model_kind(std::string_view text);
TransferStrategy parse_strategy(std::string_view text);
Indicator parse_indicator(std::string_view text);

} // namespace emtpd
