#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mimic {

// Base for everything thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Shape/axis mismatches. Messages name the offending axis.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Invalid configuration values (flags, hyperparameters, enum parses).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// API misuse: preconditions that are the caller's responsibility.
class ContractError : public Error {
 public:
  using Error::Error;
};

// Malformed files. Carries the byte offset where parsing failed, if known.
class FormatError : public Error {
 public:
  FormatError(const std::string& msg, std::int64_t offset = -1)
      : Error(offset >= 0 ? msg + " (offset " + std::to_string(offset) + ")" : msg),
        offset_(offset) {}
  std::int64_t offset() const { return offset_; }

 private:
  std::int64_t offset_;
};

// Oracle query budget exhausted. Carries used/budget.
class BudgetError : public Error {
 public:
  BudgetError(std::int64_t used, std::int64_t budget)
      : Error("query budget exhausted: used " + std::to_string(used) + " of " +
              std::to_string(budget)),
        used_(used),
        budget_(budget) {}
  std::int64_t used() const { return used_; }
  std::int64_t budget() const { return budget_; }

 private:
  std::int64_t used_;
  std::int64_t budget_;
};

// Non-finite loss during training. Carries the step and the offending group.
class TrainingDivergenceError : public Error {
 public:
  TrainingDivergenceError(std::int64_t step, const std::string& group,
                          const std::string& detail = "non-finite loss")
      : Error("training diverged at step " + std::to_string(step) + " in group '" + group +
              "': " + detail),
        step_(step),
        group_(group) {}
  std::int64_t step() const { return step_; }
  const std::string& group() const { return group_; }

 private:
  std::int64_t step_;
  std::string group_;
};

// Too few samples for a distributional metric.
class SampleSizeError : public Error {
 public:
  using Error::Error;
};

// Victim training failed to reach its loss threshold. Carries the loss curve.
class VictimTrainingError : public Error {
 public:
  VictimTrainingError(const std::string& msg, std::vector<double> loss_curve)
      : Error(msg), loss_curve_(std::move(loss_curve)) {}
  const std::vector<double>& loss_curve() const { return loss_curve_; }

 private:
  std::vector<double> loss_curve_;
};

}  // namespace mimic
