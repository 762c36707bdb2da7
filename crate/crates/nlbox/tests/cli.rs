use std::path::PathBuf;
use std::process::{Command, Output};

fn nlbox(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nlbox")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("nlbox-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn chsh_of_pr() {
    let o = nlbox(&["chsh", "--box", "pr"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().next(), Some("chsh=4/1"));
}

#[test]
fn distill_fww_row() {
    let o = nlbox(&["distill", "--protocol", "fww", "--n", "3", "--eps", "1/4"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("protocol,eps,n,chsh_in,chsh_out,formula,match"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row, ["fww", "1/4", "3", "5/2", "23/8", "23/8", "true"]);
}

#[test]
fn classify_uniform_file() {
    let mut text = String::from("# uniform box\n");
    for i in 0..16 {
        text += &format!("{} {} {} {} 1/4\n", i >> 3 & 1, i >> 2 & 1, i >> 1 & 1, i & 1);
    }
    let p = scratch("uniform.txt", &text);
    let o = nlbox(&["classify", "--file", p.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "class=Local\n");
}

#[test]
fn exit_codes() {
    assert_eq!(nlbox(&["nonsense"]).status.code(), Some(2));
    assert_eq!(nlbox(&["chsh", "--box"]).status.code(), Some(2));
    assert_eq!(nlbox(&["chsh", "--box", "wat"]).status.code(), Some(1));
    let mut text = String::new();
    for i in 0..16 {
        let (a, b, x, y) = (i >> 3 & 1, i >> 2 & 1, i >> 1 & 1, i & 1);
        // Bob outputs Alice's input: signalling.
        let p = if a == 0 && b == x { "1" } else { "0" };
        text += &format!("{a} {b} {x} {y} {p}\n");
    }
    let p = scratch("signal.txt", &text);
    let f = p.to_str().unwrap();
    assert_eq!(stdout(&nlbox(&["classify", "--file", f])), "class=Signalling\n");
    let o = nlbox(&["decompose", "--file", f]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8(o.stderr).unwrap().contains("signalling"));
}

#[test]
fn sweeps_match() {
    let o = nlbox(&["sweep", "--protocol", "fww"]);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 1 + 4 * 5);
    assert!(text.lines().skip(1).all(|l| l.ends_with(",true")));
    let o = nlbox(&["sweep", "--protocol", "bs", "--eps", "1/8,1/4,1/2,3/4"]);
    assert!(stdout(&o).lines().skip(1).all(|l| l.ends_with(",true")));
    let o = nlbox(&["sweep", "--protocol", "bs", "--iterate", "--eps", "1/10", "--n", "10"]);
    let text = stdout(&o);
    assert!(text.starts_with("protocol,eps,n,chsh_in,chsh_out,formula,match,crossed_bcc\n"));
    let crossed: Vec<&str> = text.lines().filter(|l| l.ends_with(",true,true")).collect();
    assert_eq!(crossed.len(), 1);
}

#[test]
fn decomposition_and_depolarization() {
    let o = nlbox(&["decompose", "--box", "vertex:0110"]);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 16);
    assert!(text.contains("0110 1/1\n"));
    assert_eq!(stdout(&nlbox(&["decompose", "--box", "pr"])).lines().next(), Some("local=false"));
    let o = nlbox(&["depolarize", "--box", "corr:1/2"]);
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("# eps=7/8"));
    assert_eq!(text.lines().count(), 17);
}

#[test]
fn short_search_finds_bs() {
    let o = nlbox(&["short-search", "--box", "corr:1/4"]);
    let text = stdout(&o);
    assert!(text.contains("max_chsh=11/4\n"));
    assert!(text.contains("distills=true\n"));
}

#[test]
fn game_file_chsh() {
    let mut text = String::from("2 2 2 2\n");
    for x in 0..2 {
        for y in 0..2 {
            text += &format!("{x} {y} 1/4\n");
        }
    }
    for a in 0..2 {
        for b in 0..2 {
            for x in 0..2 {
                for y in 0..2 {
                    text += &format!("{a} {b} {x} {y} {}\n", u8::from(a ^ b == x & y));
                }
            }
        }
    }
    let p = scratch("chsh.game", &text);
    let run = |threads: &str| stdout(&nlbox(&["--threads", threads, "--seed", "3", "game", "--file", p.to_str().unwrap()]));
    let one = run("1");
    assert!(one.contains("omega_c=3/4\n"));
    assert!(one.contains("tau=1/2\n"));
    assert!(one.contains("omega_q=0.8535533906\n"));
    assert!(one.contains("thm8_holds=true\n"));
    assert_eq!(one, run("4"));
}

#[test]
fn protocols() {
    let o = stdout(&nlbox(&["vandam", "--fn", "8000", "--check-all"]));
    assert!(o.contains("verified=true"));
    let o = stdout(&nlbox(&["vandam", "--fn", "6", "--bits", "1", "--x", "1", "--y", "0"]));
    assert!(o.contains("f=1\n") && o.contains("success=1/1\n"));
    let o = stdout(&nlbox(&["bp", "--fn", "80"]));
    assert!(o.contains("exact=true\n"));
    let o = stdout(&nlbox(&["nlc", "--fn", "8"]));
    assert!(o.contains("omega_c=3/4\n"));
    let o = stdout(&nlbox(&["ot", "demo"]));
    assert!(o.contains("correct=true\n") && o.contains("sender_leak=0/1\n") && o.contains("reduction_cheating=1/1\n"));
    let o = stdout(&nlbox(&["bc", "analyze", "--n", "2", "--k", "2"]));
    assert!(o.contains("hiding=5/8\n") && o.contains("hiding_bound=3/4\n") && o.contains("binding=1/4\n"));
    let a = stdout(&nlbox(&["--seed", "9", "bc", "demo", "--n", "2", "--k", "2", "--bit", "1"]));
    assert!(a.ends_with("accepted=true\n"));
    assert_eq!(a, stdout(&nlbox(&["--seed", "9", "bc", "demo", "--n", "2", "--k", "2", "--bit", "1"])));
}

#[test]
fn tripartite_and_generalized() {
    let o = stdout(&nlbox(&["tri", "--box", "parity", "--dimension"]));
    assert_eq!(o, "dimension=26\nns_pairwise=true\nns_single_party=true\ntwo_way_local=false\nfully_local=false\n");
    let o = stdout(&nlbox(&["tri", "--box", "pr-bc"]));
    assert!(o.contains("two_way_local=true\nfully_local=false\n"));
    let o = stdout(&nlbox(&["genbox", "--vertex", "2", "--compose", "3", "--project", "2"]));
    assert!(o.contains("is_vertex=true\n"));
    assert!(o.contains("dimension=8\n"));
    let t = stdout(&nlbox(&["genbox", "--vertex", "3", "--da", "3", "--db", "4"]));
    assert!(t.contains("dimension=34\ndimension_formula=34\n"));
}
