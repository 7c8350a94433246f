#pragma once

#include <Eigen/Core>
#include <map>
#include <string>
#include <vector>

#include "xdat/embedding.hpp"

namespace xdat {

struct TransformMatrix {
    std::string domain_id;
    Eigen::MatrixXd matrix;  // d x d, orthogonal
};

struct AlignmentConfig {
    double threshold = 0.001;  // tau
    int max_iterations = 100;

    void validate() const;
};

struct UnifiedSpace {
    EmbeddingSpace target;  // Y over the union vocabulary, unit rows
    std::vector<TransformMatrix> transforms;
    std::vector<double> residual_history;
    std::map<std::string, int> multiplicity;  // n_w
    bool converged = false;
    std::vector<std::string> warnings;
};

// max |M^T M - I| entry; 0 for a perfectly orthogonal matrix.
double orthogonality_defect(const Eigen::MatrixXd& m);

// Optimal orthogonal W minimising ||X W - Y||_F: W = U V^T with
// X^T Y = U S V^T. Reflections are allowed.
Eigen::MatrixXd procrustes_solve(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y);

struct TargetUpdate {
    EmbeddingSpace target;
    std::map<std::string, int> multiplicity;
};

// Y(w) = mean of S_i(w) M_i over the spaces containing w, over the union
// vocabulary. Rows are re-normalised unless renormalize is false (the raw
// average is what the coordinate-descent argument speaks about).
TargetUpdate update_target(const std::vector<EmbeddingSpace>& spaces,
                           const std::vector<TransformMatrix>& transforms,
                           bool renormalize = true);

// Average normalised residual: (1/n) sum_i ||S_i M_i - Y||_F / sqrt(|S_i| d),
// where only rows whose words exist in Y are paired and counted.
double residual_error(const std::vector<EmbeddingSpace>& spaces,
                      const std::vector<TransformMatrix>& transforms,
                      const EmbeddingSpace& target);

// Iterates Procrustes solves against the current target with target
// averaging until the residual change drops below the threshold. The first
// space seeds the target, so it acts as the reference orientation.
UnifiedSpace align_spaces(const std::vector<EmbeddingSpace>& spaces,
                          const AlignmentConfig& config);

// Plain-text d x d matrix, one row per line.
void write_transform(const TransformMatrix& transform, const std::string& path);
TransformMatrix read_transform(const std::string& path, const std::string& domain_id);

// CSV "iteration,error", iterations numbered from 1.
void write_residual_history(const std::vector<double>& history, const std::string& path);

} // namespace xdat
