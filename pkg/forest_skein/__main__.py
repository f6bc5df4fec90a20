from forest_skein.cli import main

main()
