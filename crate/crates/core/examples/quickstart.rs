//! A three-point problem in R² ordered by the orthant, scalarized by three
//! linear functionals.

use psiset_core::families::simplex_grid_2d;
use psiset_core::{construct_solution, is_solution, linear_family, min_set, Cone, Mode, PointCloudSet, SetValue, SetValuedProblem};

fn main() {
    let cone = Cone::orthant(2);
    let fam = linear_family(&cone, &simplex_grid_2d(2), None).unwrap();
    let cloud = |pts: Vec<Vec<f64>>| SetValue::Cloud(PointCloudSet::with_cone(pts, cone.clone()));
    let grid = vec![vec![0.0], vec![1.0], vec![2.0], vec![3.0]];
    let values = vec![cloud(vec![vec![1.0, 0.0]]), cloud(vec![vec![0.0, 1.0]]), cloud(vec![vec![0.6, 0.6]]), SetValue::Empty];
    let prob = SetValuedProblem::new("quickstart", grid, values, fam).unwrap();
    for eps in [0.0, 0.2] {
        println!("Min({eps}) = {:?}", min_set(&prob, eps, Mode::Strict).unwrap().indices);
    }
    let m = construct_solution(&prob, 0.1).unwrap();
    println!("constructed (0.1)-solution {m:?}, valid = {}", is_solution(&prob, &m, 0.1, Mode::Strict).unwrap());
}
