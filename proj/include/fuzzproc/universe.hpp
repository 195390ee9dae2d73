#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "fuzzproc/error.hpp"

namespace fuzzproc {

/// Finite, ordered set of execution labels. Declaration order is canonical
/// and drives every iteration and printout. Copies share the label table.
class Universe {
 public:
  explicit Universe(std::vector<std::string> labels) {
    if (labels.empty()) {
      throw Error(ErrorKind::InvalidArgument, "universe must contain at least one label");
    }
    auto data = std::make_shared<Data>();
    data->labels = std::move(labels);
    for (std::size_t i = 0; i < data->labels.size(); ++i) {
      const auto& label = data->labels[i];
      if (label.empty() || std::any_of(label.begin(), label.end(), [](unsigned char c) {
            return c <= ' ' || c == ',' || c == '=' || c == '{' || c == '}';
          })) {
        throw Error(ErrorKind::InvalidArgument, "invalid execution label '" + label + "'");
      }
      if (!data->index.emplace(label, i).second) {
        throw Error(ErrorKind::DuplicateLabel, "label '" + label + "' declared twice");
      }
    }
    data_ = std::move(data);
  }

  Universe(std::initializer_list<std::string> labels)
      : Universe(std::vector<std::string>(labels)) {}

  /// Universe of `size` generated labels: "x" when size is 1, else x1..xn.
  static Universe generated(std::size_t size) {
    if (size == 1) return Universe({"x"});
    std::vector<std::string> labels;
    labels.reserve(size);
    for (std::size_t i = 1; i <= size; ++i) labels.push_back("x" + std::to_string(i));
    return Universe(std::move(labels));
  }

  std::size_t size() const noexcept { return data_->labels.size(); }
  std::span<const std::string> labels() const noexcept { return data_->labels; }
  const std::string& label(std::size_t i) const { return data_->labels.at(i); }

  std::optional<std::size_t> find(std::string_view label) const {
    auto it = data_->index.find(std::string(label));
    if (it == data_->index.end()) return std::nullopt;
    return it->second;
  }

  bool contains(std::string_view label) const { return find(label).has_value(); }

  /// Index of `label`; throws UnknownLabel.
  std::size_t index_of(std::string_view label) const {
    if (auto i = find(label)) return *i;
    throw Error(ErrorKind::UnknownLabel,
                "label '" + std::string(label) + "' is not in the universe");
  }

  /// Sub-universe keeping the labels at `keep` (indices in ascending order).
  Universe restrict(std::span<const std::size_t> keep) const {
    std::vector<std::string> labels;
    labels.reserve(keep.size());
    for (auto i : keep) labels.push_back(label(i));
    return Universe(std::move(labels));
  }

  friend bool operator==(const Universe& a, const Universe& b) {
    return a.data_ == b.data_ || a.data_->labels == b.data_->labels;
  }

 private:
  struct Data {
    std::vector<std::string> labels;
    std::unordered_map<std::string, std::size_t> index;
  };

  std::shared_ptr<const Data> data_;
};

}  // namespace fuzzproc
