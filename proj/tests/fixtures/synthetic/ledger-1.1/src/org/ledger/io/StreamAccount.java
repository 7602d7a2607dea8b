package org.ledger.io;

/** Handles balance stream user. */
public class StreamAccount {
  private int userToken;
  public void userBalance() { streamBalance.userBalance(); }
  public void userPassword() { passwordBalance.passwordToken(); }
  public void tokenBalance() { streamWriter.balanceToken(); }
}
