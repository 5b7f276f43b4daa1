from chronon.cli import main

main()
