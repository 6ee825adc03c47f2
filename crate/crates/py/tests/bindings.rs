use pyo3::exceptions::{PyMemoryError, PyNotImplementedError, PyValueError};
use pyo3::prelude::*;
use qtau::lie::RootSystem;
use qtau::manifold::{tau, Flavor, ManifoldSpec};

const POINCARE: &str = r#"{"name": "P", "components": [{"special": {"trefoil": {"framing": -1, "chirality": "left"}}}]}"#;
const HOPF: &str = r#"{"components": [{"special": {"hopf": {"framings": [2, 2]}}}]}"#;

#[test]
fn bindings_match_library() {
    Python::initialize();
    Python::attach(|py| {
        let d = qtau_py::tau(py, "A1", 7, POINCARE, "projective", 1).unwrap();
        let coeffs: Vec<String> = d.get_item("coeffs").unwrap().unwrap().extract().unwrap();
        let spec = ManifoldSpec::from_json(POINCARE).unwrap();
        let lib = tau(&spec, &RootSystem::from_label("A1").unwrap(), 7, 1, Flavor::Projective).unwrap();
        assert_eq!(coeffs, lib.value.to_string_coeffs());
        let integral: bool = d.get_item("integral").unwrap().unwrap().extract().unwrap();
        assert!(integral);

        let s = qtau_py::series(py, "A1", POINCARE, 4, vec![7, 11, 13]).unwrap();
        let coeffs: Vec<(String, String)> = s.get_item("coeffs").unwrap().unwrap().extract().unwrap();
        assert_eq!(coeffs.len(), 5);
        let table = s.get_item("residues").unwrap().unwrap();
        for p in [7, 11, 13] {
            let pass: bool = table.get_item(p).unwrap().get_item("pass").unwrap().extract().unwrap();
            assert!(pass);
        }

        assert!(qtau_py::splitting_check("A2", 5, HOPF, 1).unwrap());
        assert!(qtau_py::s_matrix_check("A1", 5).unwrap());
        assert!(qtau_py::gauss_vanishes("C2", 5).unwrap());
        assert!(!qtau_py::gauss_vanishes("A2", 5).unwrap());
    });
}

#[test]
fn errors_become_python_exceptions() {
    Python::initialize();
    Python::attach(|py| {
        let e = qtau_py::tau(py, "Z3", 5, POINCARE, "projective", 1).unwrap_err();
        assert!(e.is_instance_of::<PyValueError>(py));
        let e = qtau_py::tau(py, "A1", 5, "{not json", "projective", 1).unwrap_err();
        assert!(e.is_instance_of::<PyValueError>(py));
        let e = qtau_py::series(py, "A2", POINCARE, 4, vec![]).unwrap_err();
        assert!(e.is_instance_of::<PyNotImplementedError>(py));
        let s3 = r#"{"components": []}"#;
        let e = qtau_py::tau(py, "E8", 31, s3, "full", 1).unwrap_err();
        assert!(e.is_instance_of::<PyMemoryError>(py));
    });
}
