//! Mixed-radix coordinates for box-shaped patches. Axis 0 is the slowest
//! index and the last axis the fastest, matching the rule tables.

/// Flat index of `coords` inside a box with the given extents.
pub fn flat_index(coords: &[usize], extents: &[usize]) -> usize {
    coords.iter().zip(extents).fold(0, |acc, (c, e)| {
        debug_assert!(c < e);
        acc * e + c
    })
}

/// Inverse of [`flat_index`].
pub fn coords_of(mut index: usize, extents: &[usize]) -> Vec<usize> {
    let mut out = vec![0; extents.len()];
    for a in (0..extents.len()).rev() {
        out[a] = index % extents[a];
        index /= extents[a];
    }
    out
}

pub fn volume(extents: &[usize]) -> usize {
    extents.iter().product()
}

/// All coordinate vectors of a box, in flat-index order.
pub fn box_points(extents: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    (0..volume(extents)).map(move |i| coords_of(i, extents))
}

/// Copies the sub-box at `offset` with extents `shape` out of a flattened array.
pub fn sub_box<T: Copy>(data: &[T], extents: &[usize], offset: &[usize], shape: &[usize]) -> Vec<T> {
    let n = volume(shape);
    let mut out = Vec::with_capacity(n);
    let mut pos = vec![0usize; shape.len()];
    for _ in 0..n {
        let mut idx = 0;
        for a in 0..shape.len() {
            idx = idx * extents[a] + offset[a] + pos[a];
        }
        out.push(data[idx]);
        for a in (0..shape.len()).rev() {
            pos[a] += 1;
            if pos[a] < shape[a] {
                break;
            }
            pos[a] = 0;
        }
    }
    out
}
