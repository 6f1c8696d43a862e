"""Locate the participation boundary and test its robustness.

Runs a sweep with a fine acceptance-ratio axis around the collapse, then
reports where each benefit column first dips below several thresholds.  The
point of the exercise: the detected boundary barely moves, whether you ask
"where does essential work first sag below 0.8?" or "below 0.5?", and
barely depends on how large the benefit is once it covers the bill.

Run:  python3 demos/boundary_hunt.py
"""

from ubisim import ModelParams, SweepSpec, detect_phase_boundary, run_sweep

if __name__ == "__main__":
    spec = SweepSpec(
        base_params=ModelParams(population_size=150, horizon=60),
        b_d_values=(10.0, 14.0, 18.0),
        phi_values=tuple(round(0.20 + 0.05 * k, 2) for k in range(9)),  # 0.20..0.60
        replicates=2,
        base_seed=42,
    )
    print("benefit levels:", spec.b_d_values)
    print("acceptance axis:", spec.phi_values, "\n")
    grid = run_sweep(spec)

    for threshold in (0.9, 0.8, 0.5):
        crossings = detect_phase_boundary(grid, threshold=threshold)
        pretty = ", ".join(
            f"B={b:g} at phi={c}" if c is not None else f"B={b:g} never"
            for b, c in zip(spec.b_d_values, crossings)
        )
        print(f"first dip below {threshold}: {pretty}")

    rho = grid.metric_matrix("min_rho_E")
    print("\nmin essential share along the fine axis (columns = benefit levels):")
    for i, phi in enumerate(spec.phi_values):
        print(f"  phi={phi:4.2f}: " + "  ".join(f"{rho[i, j]:5.2f}" for j in range(3)))
