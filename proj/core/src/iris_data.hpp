#pragma once

#include <array>

namespace hypefcm::detail {

// Fisher's Iris measurements (sepal length/width, petal length/width) with
// species codes 0 = setosa, 1 = versicolor, 2 = virginica.
inline constexpr std::size_t kIrisRows = 150;
inline constexpr std::size_t kIrisCols = 4;
extern const std::array<std::array<double, 5>, kIrisRows> kIrisTable;

}  // namespace hypefcm::detail
