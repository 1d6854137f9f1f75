use btw_core::*;
fn main() {
    let p = Perm4::new([3,2,1,0]).unwrap();
    let r = Perm4::new([0,2,1,3]).unwrap();
    let t = Triangulation::from_gluings("one-tet", vec![[
        Gluing{tet:0,perm:p}, Gluing{tet:0,perm:r}, Gluing{tet:0,perm:r}, Gluing{tet:0,perm:p}]]);
    let sk = Skeleta::compute(&t);
    println!("edges: {}", sk.n_edges());
    for c in &sk.edge_classes { println!("  class {}: val {} cons {} emb {:?}", c.index, c.valence, c.orientation_consistent, c.embeddings); }
    println!("faces: {}", sk.n_faces());
    println!("vertices: {}", sk.vertex_classes.len());
    for v in &sk.vertex_classes { println!("  vclass {}: {:?}", v.index, v.embeddings); }
    let bs = skeleta::boundary_surface(&t, &sk);
    for c in &bs.components { println!("  comp vc={} F={} E={} V={} chi={}", c.vertex_class, c.n_triangles, c.n_sides, c.n_corners, c.chi); }
    println!("chi(M) = {}", sk.chi(&t));
}
