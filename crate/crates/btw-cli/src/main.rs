fn main(){println!("btw");}
