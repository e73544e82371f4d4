#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace rdgfv {

/// Cell or face index, one integer per direction. Interior cells are
/// 0..N-1 per direction; ghost indices extend to [-m, N-1+m]. The paper-style
/// half-integer cell label i+1/2 corresponds to integer index i here.
struct MultiIndex {
    int dim = 1;
    std::array<int, 2> idx = {0, 0};

    MultiIndex() = default;
    explicit MultiIndex(int i) : dim(1), idx{i, 0} {}
    MultiIndex(int i, int j) : dim(2), idx{i, j} {}

    int operator[](int axis) const { return idx[axis]; }
    int& operator[](int axis) { return idx[axis]; }

    bool operator==(const MultiIndex& other) const {
        if (dim != other.dim) return false;
        for (int a = 0; a < dim; ++a)
            if (idx[a] != other.idx[a]) return false;
        return true;
    }
};

/// Uniform Cartesian mesh on [0,1]^d with a ghost layer of width m per side.
class CartesianMesh {
public:
    CartesianMesh(int dim, int n, int ghost_width) : dim_(dim), n_(n), ghost_(ghost_width) {
        if (dim != 1 && dim != 2) throw std::invalid_argument("mesh: dim must be 1 or 2");
        if (ghost_width < 1) throw std::invalid_argument("mesh: ghost_width must be >= 1");
        if (n < 2) throw std::invalid_argument("mesh: n must be >= 2");
        h_ = 1.0 / n;
    }

    int dim() const { return dim_; }
    int n() const { return n_; }
    int ghost_width() const { return ghost_; }
    double h() const { return h_; }

    std::int64_t cell_count() const {
        std::int64_t c = 1;
        for (int a = 0; a < dim_; ++a) c *= n_;
        return c;
    }

    int extended_n() const { return n_ + 2 * ghost_; }

    bool is_interior(const MultiIndex& mi) const {
        for (int a = 0; a < dim_; ++a)
            if (mi[a] < 0 || mi[a] >= n_) return false;
        return true;
    }

    bool is_valid(const MultiIndex& mi) const {
        for (int a = 0; a < dim_; ++a)
            if (mi[a] < -ghost_ || mi[a] > n_ - 1 + ghost_) return false;
        return true;
    }

    /// Centroid of an interior or ghost cell; component a is (idx_a + 1/2)*h.
    std::array<double, 2> cell_centroid(const MultiIndex& mi) const {
        std::array<double, 2> c = {0.0, 0.0};
        for (int a = 0; a < dim_; ++a) c[a] = (mi[a] + 0.5) * h_;
        return c;
    }

    /// Lexicographic linearization of interior cells, first axis fastest.
    std::int64_t linearize(const MultiIndex& mi) const {
        std::int64_t lin = 0;
        for (int a = dim_ - 1; a >= 0; --a) lin = lin * n_ + mi[a];
        return lin;
    }

    MultiIndex delinearize(std::int64_t lin) const {
        MultiIndex mi;
        mi.dim = dim_;
        for (int a = 0; a < dim_; ++a) {
            mi[a] = static_cast<int>(lin % n_);
            lin /= n_;
        }
        return mi;
    }

    /// Linearization over the extended (ghost-inclusive) index box.
    std::int64_t linearize_extended(const MultiIndex& mi) const {
        const int en = extended_n();
        std::int64_t lin = 0;
        for (int a = dim_ - 1; a >= 0; --a) lin = lin * en + (mi[a] + ghost_);
        return lin;
    }

    std::int64_t extended_count() const {
        std::int64_t c = 1;
        for (int a = 0; a < dim_; ++a) c *= extended_n();
        return c;
    }

private:
    int dim_;
    int n_;
    int ghost_;
    double h_;
};

/// A mesh face. The index holds the face position on the normal axis
/// (0..N) and the cell index on tangential axes.
struct Face {
    int normal_axis = 0;
    MultiIndex index;
    bool is_boundary = false;
};

inline CartesianMesh build_mesh(int dim, int n, int ghost_width) {
    return CartesianMesh(dim, n, ghost_width);
}

/// Every face exactly once, boundary flag set. Per axis there are
/// (N+1)*N^(d-1) faces, of which (N-1)*N^(d-1) are interior.
inline std::vector<Face> faces(const CartesianMesh& mesh) {
    std::vector<Face> out;
    const int n = mesh.n();
    if (mesh.dim() == 1) {
        out.reserve(n + 1);
        for (int i = 0; i <= n; ++i)
            out.push_back({0, MultiIndex(i), i == 0 || i == n});
    } else {
        out.reserve(2 * (n + 1) * n);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i <= n; ++i)
                out.push_back({0, MultiIndex(i, j), i == 0 || i == n});
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i < n; ++i)
                out.push_back({1, MultiIndex(i, j), j == 0 || j == n});
    }
    return out;
}

/// Cell averages indexed over the extended (ghost-inclusive) box.
template <typename T>
class AvgField {
public:
    explicit AvgField(const CartesianMesh& mesh)
        : mesh_(mesh), data_(static_cast<std::size_t>(mesh.extended_count())) {}

    const CartesianMesh& mesh() const { return mesh_; }

    T& operator()(const MultiIndex& mi) { return data_[mesh_.linearize_extended(mi)]; }
    const T& operator()(const MultiIndex& mi) const { return data_[mesh_.linearize_extended(mi)]; }

    T& at1(int i) { return (*this)(MultiIndex(i)); }
    const T& at1(int i) const { return (*this)(MultiIndex(i)); }
    T& at2(int i, int j) { return (*this)(MultiIndex(i, j)); }
    const T& at2(int i, int j) const { return (*this)(MultiIndex(i, j)); }

    std::vector<T>& raw() { return data_; }
    const std::vector<T>& raw() const { return data_; }

    /// Visit every interior multi-index in linearization order.
    template <typename F>
    void for_interior(F&& f) const {
        const std::int64_t count = mesh_.cell_count();
        for (std::int64_t lin = 0; lin < count; ++lin) f(mesh_.delinearize(lin));
    }

private:
    CartesianMesh mesh_;
    std::vector<T> data_;
};

}  // namespace rdgfv
